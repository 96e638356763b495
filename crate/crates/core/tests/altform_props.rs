use std::collections::HashSet;

use pgcensus_core::altform::{unit, AlternatingForm, Plane2, Vec7, DIM, NUM_COEFFS, PAIRS};
use pgcensus_core::FieldCtx;
use proptest::prelude::*;

const PRIMES: [u32; 5] = [2, 3, 5, 7, 13];

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| FieldCtx::new(p).unwrap())
}

fn residues<const N: usize>(p: u32) -> impl Strategy<Value = [u8; N]> {
    prop::array::uniform(0..p as u8).prop_map(|a: [u8; N]| a)
}

fn form_and_vecs() -> impl Strategy<Value = (FieldCtx, AlternatingForm, Vec7, Vec7)> {
    field().prop_flat_map(|ctx| {
        let p = ctx.p();
        (
            Just(ctx),
            prop::array::uniform21(0..p as u8),
            residues::<7>(p),
            residues::<7>(p),
        )
            .prop_map(|(ctx, c, v1, v2)| {
                let w = AlternatingForm::from_coeffs(&ctx, c).unwrap();
                (ctx, w, v1, v2)
            })
    })
}

/// Random invertible 7x7 matrix: a product of elementary operations applied
/// to the identity.
fn invertible(ctx: &FieldCtx, ops: &[(usize, usize, u8)]) -> [[u8; DIM]; DIM] {
    let mut a = [[0u8; DIM]; DIM];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, s) in ops {
        if i == j {
            continue;
        }
        let src = a[j];
        for (x, y) in a[i].iter_mut().zip(src) {
            *x = ctx.add_raw(*x, ctx.mul_raw(s, y));
        }
    }
    a
}

/// Coefficients of `A^T M A` read back off the upper triangle.
fn congruent(ctx: &FieldCtx, w: &AlternatingForm, a: &[[u8; DIM]; DIM]) -> AlternatingForm {
    let cols: Vec<Vec7> = (0..DIM).map(|c| std::array::from_fn(|r| a[r][c])).collect();
    let coeffs: [u8; NUM_COEFFS] =
        std::array::from_fn(|k| {
            let (i, j) = PAIRS[k];
            w.eval(ctx, &cols[i], &cols[j])
        });
    AlternatingForm::from_coeffs(ctx, coeffs).unwrap()
}

proptest! {
    #[test]
    fn eval_is_antisymmetric((ctx, w, v1, v2) in form_and_vecs()) {
        let a = w.eval(&ctx, &v1, &v2);
        let b = w.eval(&ctx, &v2, &v1);
        prop_assert_eq!(ctx.add_raw(a, b), 0);
        prop_assert_eq!(w.eval(&ctx, &v1, &v1), 0);
    }

    #[test]
    fn eval_matches_matrix_product((ctx, w, v1, v2) in form_and_vecs()) {
        let m = w.matrix(&ctx);
        let mut acc = 0u32;
        for i in 0..DIM {
            for j in 0..DIM {
                acc += v1[i] as u32 * m[i][j] as u32 * v2[j] as u32;
            }
        }
        prop_assert_eq!(w.eval(&ctx, &v1, &v2) as u32, acc % ctx.p());
    }

    #[test]
    fn rank_is_even_and_kernel_complements_it((ctx, w, _v1, _v2) in form_and_vecs()) {
        let rank = w.rank(&ctx);
        prop_assert!(rank % 2 == 0 && rank <= 6);
        let kernel = w.kernel_basis(&ctx);
        prop_assert_eq!(kernel.len(), DIM - rank);
        for v in &kernel {
            for k in 0..DIM {
                prop_assert_eq!(w.eval(&ctx, v, &unit(k)), 0);
            }
        }
    }

    #[test]
    fn rank_invariant_under_congruence(
        (ctx, w, _v1, _v2) in form_and_vecs(),
        ops in prop::collection::vec((0..DIM, 0..DIM, 1u8..61), 0..30),
    ) {
        let ops: Vec<_> = ops.into_iter().map(|(i, j, s)| (i, j, s % ctx.p() as u8)).collect();
        let a = invertible(&ctx, &ops);
        let w2 = congruent(&ctx, &w, &a);
        prop_assert_eq!(w.rank(&ctx), w2.rank(&ctx));
    }

    #[test]
    fn restriction_independent_of_plane_basis(
        (ctx, w, v1, v2) in form_and_vecs(),
        m in prop::array::uniform4(0u8..61),
    ) {
        let p = ctx.p() as u8;
        let [a, b, c, d] = m.map(|x| x % p);
        let det = ctx.sub_raw(ctx.mul_raw(a, d), ctx.mul_raw(b, c));
        prop_assume!(det != 0);
        let Some(t) = Plane2::span(&ctx, &v1, &v2) else { return Ok(()); };
        let [r1, r2] = *t.rows();
        let s1: Vec7 = std::array::from_fn(|i| ctx.add_raw(ctx.mul_raw(a, r1[i]), ctx.mul_raw(b, r2[i])));
        let s2: Vec7 = std::array::from_fn(|i| ctx.add_raw(ctx.mul_raw(c, r1[i]), ctx.mul_raw(d, r2[i])));
        let direct = w.eval(&ctx, &s1, &s2) == 0;
        prop_assert_eq!(direct, w.restrict_vanishes(&ctx, &t));
        prop_assert_eq!(Plane2::span(&ctx, &s1, &s2), Some(t));
        // the value scales by the determinant
        prop_assert_eq!(w.eval(&ctx, &s1, &s2), ctx.mul_raw(det, w.eval(&ctx, &r1, &r2)));
    }
}

#[test]
fn antisymmetry_exhaustive_at_two() {
    let ctx = FieldCtx::new(2).unwrap();
    let w = AlternatingForm::from_coeffs(&ctx, std::array::from_fn(|k| (k * 5 % 3 % 2) as u8)).unwrap();
    let all: Vec<Vec7> = (0u32..128).map(|x| std::array::from_fn(|i| ((x >> i) & 1) as u8)).collect();
    for v1 in &all {
        for v2 in &all {
            assert_eq!(w.eval(&ctx, v1, v2), w.eval(&ctx, v2, v1));
        }
    }
}

/// Over F_2 the nonzero alternating forms of rank 2 are exactly the
/// decomposable ones `u ∧ v`, one per 2-plane of the dual space.
#[test]
fn rank_two_forms_at_two_exhaustive() {
    let ctx = FieldCtx::new(2).unwrap();
    let mut rank_two = 0u64;
    let mut coeffs = [0u8; NUM_COEFFS];
    for bits in 1u32..(1 << NUM_COEFFS) {
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = ((bits >> k) & 1) as u8;
        }
        let w = AlternatingForm::from_coeffs(&ctx, coeffs).unwrap();
        rank_two += (w.rank(&ctx) == 2) as u64;
    }

    // oracle: distinct plücker vectors u ∧ v
    let vecs: Vec<Vec7> = (1u32..128).map(|x| std::array::from_fn(|i| ((x >> i) & 1) as u8)).collect();
    let mut wedges = HashSet::new();
    for u in &vecs {
        for v in &vecs {
            let pl: Vec<u8> = PAIRS.iter().map(|&(i, j)| (u[i] * v[j] + u[j] * v[i]) % 2).collect();
            if pl.iter().any(|&x| x != 0) {
                wedges.insert(pl);
            }
        }
    }
    assert_eq!(wedges.len(), 2667);
    assert_eq!(rank_two, 2667);
}
