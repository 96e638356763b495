//! Alternating bilinear forms on `F_p^7` and 2-planes in `F_p^7`.
//!
//! A form is stored by its 21 strictly-upper-triangular coefficients in
//! row-major order `(1,2), (1,3), ..., (1,7), (2,3), ..., (6,7)`. Indices in
//! code are zero-based, so coefficient `k` sits at [`PAIRS`]`[k]`.

use crate::ffield::FieldCtx;

pub const DIM: usize = 7;
pub const NUM_COEFFS: usize = 21;

/// Zero-based `(i, j)`, `i < j`, for each coefficient slot.
pub const PAIRS: [(usize, usize); NUM_COEFFS] = {
    let mut out = [(0, 0); NUM_COEFFS];
    let mut k = 0;
    let mut i = 0;
    while i < DIM {
        let mut j = i + 1;
        while j < DIM {
            out[k] = (i, j);
            k += 1;
            j += 1;
        }
        i += 1;
    }
    out
};

/// Slot of the coefficient `c_{ij}` for zero-based `i < j`.
pub const fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    i * (2 * DIM - i - 1) / 2 + (j - i - 1)
}

/// A vector in `F_p^7`, stored as residues.
pub type Vec7 = [u8; DIM];

/// Standard basis vector `e_k` (zero-based).
pub fn unit(k: usize) -> Vec7 {
    let mut v = [0; DIM];
    v[k] = 1;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    coeffs: [u8; NUM_COEFFS],
}

impl AlternatingForm {
    pub const ZERO: Self = Self {
        coeffs: [0; NUM_COEFFS],
    };

    /// Builds a form from already-reduced coefficients. Returns `None` if
    /// some coefficient is not below `p`.
    pub fn from_coeffs(ctx: &FieldCtx, coeffs: [u8; NUM_COEFFS]) -> Option<Self> {
        coeffs
            .iter()
            .all(|&c| (c as u32) < ctx.p())
            .then_some(Self { coeffs })
    }

    /// `e_i^* ∧ e_j^*` for zero-based `i < j`.
    pub fn elementary(i: usize, j: usize) -> Self {
        let mut coeffs = [0; NUM_COEFFS];
        coeffs[pair_index(i, j)] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u8; NUM_COEFFS] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| ctx.add_raw(self.coeffs[k], other.coeffs[k])),
        }
    }

    pub fn scale(&self, ctx: &FieldCtx, a: u8) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| ctx.mul_raw(self.coeffs[k], a)),
        }
    }

    /// `sum_k coeffs[k] * forms[k]`, coefficientwise.
    pub fn linear_combination(ctx: &FieldCtx, forms: &[Self], coeffs: &[u8]) -> Self {
        assert_eq!(forms.len(), coeffs.len());
        let mut acc = [0u32; NUM_COEFFS];
        for (form, &a) in forms.iter().zip(coeffs) {
            if a == 0 {
                continue;
            }
            for (slot, &c) in acc.iter_mut().zip(&form.coeffs) {
                *slot += a as u32 * c as u32;
            }
        }
        Self {
            coeffs: acc.map(|s| ctx.reduce_u32(s)),
        }
    }

    /// Full matrix `M` with `M[i][j] = c_ij`, `M[j][i] = -c_ij`, zero diagonal.
    pub fn matrix(&self, ctx: &FieldCtx) -> [[u8; DIM]; DIM] {
        let mut m = [[0u8; DIM]; DIM];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m[i][j] = self.coeffs[k];
            m[j][i] = ctx.neg_raw(self.coeffs[k]);
        }
        m
    }

    /// `w(v1, v2) = sum_{i<j} c_ij (v1_i v2_j - v1_j v2_i)`.
    pub fn eval(&self, ctx: &FieldCtx, v1: &Vec7, v2: &Vec7) -> u8 {
        let p = ctx.p();
        let mut acc = 0u32;
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            let plus = v1[i] as u32 * v2[j] as u32;
            let minus = v1[j] as u32 * v2[i] as u32;
            // plücker coordinate, kept non-negative
            let pl = (plus + p * p - minus) % p;
            acc += self.coeffs[k] as u32 * pl;
        }
        ctx.reduce_u32(acc)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut m = self.matrix(ctx);
        row_reduce(ctx, &mut m).len()
    }

    /// Basis of `{v : w(v, .) = 0}`, one vector per free column of the RREF.
    pub fn kernel_basis(&self, ctx: &FieldCtx) -> Vec<Vec7> {
        let mut m = self.matrix(ctx);
        nullspace(ctx, &mut m)
    }

    /// Whether the form restricts to zero on the plane.
    pub fn restrict_vanishes(&self, ctx: &FieldCtx, t: &Plane2) -> bool {
        let [r1, r2] = t.rows();
        self.eval(ctx, r1, r2) == 0
    }
}

/// In-place reduced row echelon form. Returns the pivot columns in order;
/// their count is the rank.
pub fn row_reduce<const N: usize>(ctx: &FieldCtx, rows: &mut [[u8; N]]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..N {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = ctx.inv_raw(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = ctx.mul_raw(*x, inv);
        }
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[col];
            if i == r || f == 0 {
                continue;
            }
            let nf = ctx.neg_raw(f);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ctx.add_raw(*x, ctx.mul_raw(nf, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{v : rows * v = 0}`. Destroys `rows`.
pub fn nullspace<const N: usize>(ctx: &FieldCtx, rows: &mut [[u8; N]]) -> Vec<[u8; N]> {
    let pivots = row_reduce(ctx, rows);
    (0..N)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [0u8; N];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg_raw(rows[r][free]);
            }
            v
        })
        .collect()
}

/// A 2-dimensional subspace of `F_p^7` held as its canonical RREF basis.
///
/// Equality of values is equality of subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Plane2 {
    rows: [Vec7; 2],
    pivots: (usize, usize),
}

impl Plane2 {
    /// Span of two vectors, or `None` if they are dependent.
    pub fn span(ctx: &FieldCtx, v1: &Vec7, v2: &Vec7) -> Option<Self> {
        let mut rows = [*v1, *v2];
        let pivots = row_reduce(ctx, &mut rows);
        (pivots.len() == 2).then(|| Self {
            rows,
            pivots: (pivots[0], pivots[1]),
        })
    }

    /// Trusts the caller that `rows` is already in canonical RREF.
    pub(crate) fn from_canonical(rows: [Vec7; 2], pivots: (usize, usize)) -> Self {
        debug_assert_eq!(rows[0][pivots.0], 1);
        debug_assert_eq!(rows[1][pivots.1], 1);
        debug_assert_eq!(rows[0][pivots.1], 0);
        Self { rows, pivots }
    }

    pub fn rows(&self) -> &[Vec7; 2] {
        &self.rows
    }

    /// Zero-based pivot columns.
    pub fn pivots(&self) -> (usize, usize) {
        self.pivots
    }

    pub fn contains(&self, ctx: &FieldCtx, v: &Vec7) -> bool {
        let mut rows = [self.rows[0], self.rows[1], *v];
        row_reduce(ctx, &mut rows).len() == 2
    }
}
