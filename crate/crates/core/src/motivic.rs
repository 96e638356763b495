//! Exact algebra in `Z[L]` and in the free `Z[L]`-module on `{1, [X], [Y]}`.
//!
//! `[X]` and `[Y]` stand for the classes of the Grassmannian-side and
//! Pfaffian-side Calabi-Yau threefolds. The Cayley hypersurface `H`, its frame
//! bundle `H~` and the two strata `H~_1`, `H~_2` are not separate symbols;
//! each is expanded into this module by the constructors below.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotivicError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    Inexact { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("projective space of negative dimension {0}")]
    NegativeDimension(i64),
    #[error("no Grassmannian G({k},{n})")]
    BadGrassmannian { k: i64, n: i64 },
    #[error("product of two expressions that both involve [X] or [Y]")]
    SymbolProduct,
}

type Result<T> = std::result::Result<T, MotivicError>;

/// Polynomial in `L` with `i64` coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    coeffs: Vec<i64>,
}

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `c * L^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    /// `L^d - 1`, which shows up everywhere below.
    pub fn l_pow_minus_one(d: usize) -> Self {
        Self::monomial(1, d).sub(&Self::one()).expect("small")
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|d| self.coeff(d).checked_add(other.coeff(d)).ok_or(MotivicError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn neg(&self) -> Result<Self> {
        self.coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(MotivicError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(MotivicError::Overflow)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(MotivicError::Overflow)?;
            }
        }
        Ok(Self::new(out))
    }

    /// Product of a list of factors.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a LPoly>) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Quotient `self / divisor` in `Z[L]`; errors unless the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let Some(dd) = divisor.degree() else {
            return Err(MotivicError::DivisionByZero);
        };
        let lead = divisor.coeffs[dd];
        let inexact = || MotivicError::Inexact {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(inexact());
        }
        let mut quot = vec![0i64; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = rem[shift + dd];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(inexact());
            }
            let q = top / lead;
            quot[shift] = q;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                let t = q.checked_mul(c).ok_or(MotivicError::Overflow)?;
                rem[shift + i] = rem[shift + i].checked_sub(t).ok_or(MotivicError::Overflow)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(inexact());
        }
        Ok(Self::new(quot))
    }

    /// Specialization `L -> q`, exact in `i128`.
    pub fn eval_at(&self, q: i128) -> Result<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(q)
                .and_then(|x| x.checked_add(c as i128))
                .ok_or(MotivicError::Overflow)
        })
    }
}

/// Renders as `c_k*L^k + ... + c_1*L + c_0`, omitting zero terms.
impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match d {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*L")?,
                _ => write!(f, "{mag}*L^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Class of `P^n`: `1 + L + ... + L^n`.
pub fn class_projective(n: i64) -> Result<LPoly> {
    if n < 0 {
        return Err(MotivicError::NegativeDimension(n));
    }
    Ok(LPoly::new(vec![1; n as usize + 1]))
}

/// Class of `G(k, n)`: the Gaussian binomial
/// `prod_{i<k} (L^{n-i} - 1) / prod_{i<k} (L^{k-i} - 1)`.
pub fn class_grassmannian(k: i64, n: i64) -> Result<LPoly> {
    if k < 0 || n < 0 || k > n {
        return Err(MotivicError::BadGrassmannian { k, n });
    }
    let (k, n) = (k as usize, n as usize);
    let num: Vec<_> = (0..k).map(|i| LPoly::l_pow_minus_one(n - i)).collect();
    let den: Vec<_> = (0..k).map(|i| LPoly::l_pow_minus_one(k - i)).collect();
    LPoly::product(&num)?.exact_div(&LPoly::product(&den)?)
}

/// `c1 * 1 + cx * [X] + cy * [Y]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotivicExpr {
    pub c1: LPoly,
    pub cx: LPoly,
    pub cy: LPoly,
}

impl MotivicExpr {
    pub fn scalar(c: LPoly) -> Self {
        Self {
            c1: c,
            ..Self::default()
        }
    }

    pub fn x() -> Self {
        Self {
            cx: LPoly::one(),
            ..Self::default()
        }
    }

    pub fn y() -> Self {
        Self {
            cy: LPoly::one(),
            ..Self::default()
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.cx.is_zero() && self.cy.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.is_scalar() && self.c1.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            c1: self.c1.add(&other.c1)?,
            cx: self.cx.add(&other.cx)?,
            cy: self.cy.add(&other.cy)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            c1: self.c1.sub(&other.c1)?,
            cx: self.cx.sub(&other.cx)?,
            cy: self.cy.sub(&other.cy)?,
        })
    }

    pub fn scale(&self, s: &LPoly) -> Result<Self> {
        Ok(Self {
            c1: self.c1.mul(s)?,
            cx: self.cx.mul(s)?,
            cy: self.cy.mul(s)?,
        })
    }

    /// Defined only when at least one side is a pure `Z[L]` scalar.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.is_scalar() {
            self.scale(&other.c1)
        } else if self.is_scalar() {
            other.scale(&self.c1)
        } else {
            Err(MotivicError::SymbolProduct)
        }
    }
}

impl fmt::Display for MotivicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*[X] + ({})*[Y]", self.c1, self.cx, self.cy)
    }
}

fn l(d: usize) -> LPoly {
    LPoly::monomial(1, d)
}

/// `(L^2 - 1)(L^2 - L)`, the number of ordered bases of a 2-plane.
pub fn frame_factor() -> Result<LPoly> {
    LPoly::l_pow_minus_one(2).mul(&l(2).sub(&l(1))?)
}

/// `(L^2 - 1)(L - 1) L^7`.
pub fn zero_divisor_cofactor() -> Result<LPoly> {
    LPoly::product(&[LPoly::l_pow_minus_one(2), LPoly::l_pow_minus_one(1), l(7)])
}

/// Frame-bundle fiber count over a form whose kernel has dimension `k`:
/// `(L^k - 1)(L^7 - L) + (L^7 - L^k)(L^6 - L)`.
pub fn kernel_split_fiber(kernel_dim: usize) -> Result<LPoly> {
    let in_kernel = LPoly::l_pow_minus_one(kernel_dim).mul(&l(7).sub(&l(1))?)?;
    let off_kernel = l(7).sub(&l(kernel_dim))?.mul(&l(6).sub(&l(1))?)?;
    in_kernel.add(&off_kernel)
}

/// `[H] = [G(2,7)][P^5] + [X] L^6`, from projecting `H` to `G(2,7)`.
pub fn class_h_via_x() -> Result<MotivicExpr> {
    Ok(MotivicExpr {
        c1: class_grassmannian(2, 7)?.mul(&class_projective(5)?)?,
        cx: l(6),
        cy: LPoly::zero(),
    })
}

/// `[H~] = [H](L^2 - 1)(L^2 - L)`.
pub fn class_tilde_h_via_x() -> Result<MotivicExpr> {
    class_h_via_x()?.scale(&frame_factor()?)
}

/// `[H~_1] = [Y]((L^3-1)(L^7-L) + (L^7-L^3)(L^6-L))`; rank-4 forms have a
/// 3-dimensional kernel.
pub fn class_tilde_h1() -> Result<MotivicExpr> {
    Ok(MotivicExpr {
        cy: kernel_split_fiber(3)?,
        ..MotivicExpr::default()
    })
}

/// `[H~_2] = ([P^6] - [Y])((L-1)(L^7-L) + (L^7-L)(L^6-L))`; rank-6 forms
/// have a 1-dimensional kernel.
pub fn class_tilde_h2() -> Result<MotivicExpr> {
    let k = kernel_split_fiber(1)?;
    Ok(MotivicExpr {
        c1: class_projective(6)?.mul(&k)?,
        cx: LPoly::zero(),
        cy: k.neg()?,
    })
}

/// `[H~] = [P^6](L^7-L)(L^6-1) + [Y](L^2-1)(L-1)L^7`.
pub fn class_tilde_h_via_y() -> Result<MotivicExpr> {
    Ok(MotivicExpr {
        c1: LPoly::product(&[
            class_projective(6)?,
            l(7).sub(&l(1))?,
            LPoly::l_pow_minus_one(6),
        ])?,
        cx: LPoly::zero(),
        cy: zero_divisor_cofactor()?,
    })
}

/// One line of the symbolic report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl IdentityCheck {
    fn poly(name: &'static str, lhs: &LPoly, rhs: &LPoly) -> Self {
        Self {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    fn expr(name: &'static str, lhs: &MotivicExpr, rhs: &MotivicExpr) -> Self {
        Self {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }
}

/// Runs S1-S4.
///
/// * S1: `[G(2,7)](L^2-1)(L^2-L) = (L^7-1)(L^7-L)`
/// * S2: `[P^6](L^6-1) = [P^5](L^7-1)`
/// * S3: `[H~_1] + [H~_2]` equals the `[Y]`-expansion of `[H~]`
/// * S4: the `[X]`-expansion minus the `[Y]`-expansion of `[H~]` is exactly
///   `([X] - [Y])(L^2-1)(L-1)L^7`
pub fn verify_symbolic() -> Result<Vec<IdentityCheck>> {
    let s1 = IdentityCheck::poly(
        "S1",
        &class_grassmannian(2, 7)?.mul(&frame_factor()?)?,
        &LPoly::l_pow_minus_one(7).mul(&l(7).sub(&l(1))?)?,
    );
    let s2 = IdentityCheck::poly(
        "S2",
        &class_projective(6)?.mul(&LPoly::l_pow_minus_one(6))?,
        &class_projective(5)?.mul(&LPoly::l_pow_minus_one(7))?,
    );
    let s3 = IdentityCheck::expr(
        "S3",
        &class_tilde_h1()?.add(&class_tilde_h2()?)?,
        &class_tilde_h_via_y()?,
    );
    let cof = zero_divisor_cofactor()?;
    let s4 = IdentityCheck::expr(
        "S4",
        &class_tilde_h_via_x()?.sub(&class_tilde_h_via_y()?)?,
        &MotivicExpr::x().sub(&MotivicExpr::y())?.scale(&cof)?,
    );
    Ok(vec![s1, s2, s3, s4])
}
