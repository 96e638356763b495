//! The counting kernels.
//!
//! For a plane with canonical rows `r1, r2` the seven values `W_k(r1, r2)`
//! are kept packed in one `u64` (see [`crate::ffield::packed`]). Walking the
//! free entries of `r2` odometer-style changes one coordinate `r2[m]` by +1
//! at a time, which adds the fixed vector `(W_k(r1, e_m))_k` lanewise. Since
//! `q` increments of a coordinate add `q * col = 0`, wrap-around needs no
//! correction. The same trick walks all `v1` for a fixed form `w`, tracking
//! `M_w v1`.

use std::collections::BTreeMap;
use std::ops::Range;

use super::enumerate::{
    free_positions, locate_plane, plane_count, plane_rows, pow, spread_digits, Planes,
    ProjectiveSpace,
};
use super::{checked_sum, reduce_chunks, CensusError, Witness, WSystem, CHUNKS};
use crate::altform::{Plane2, Vec7, DIM, PAIRS};
use crate::ffield::packed;

/// Largest `q` for which the brute-force `H` census runs by default.
pub const DEFAULT_MAX_BRUTE_H_Q: u32 = 3;

type Mats = [[[u8; DIM]; DIM]; DIM];

/// Histogram of ranks over `P(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankCensus {
    pub histogram: BTreeMap<usize, u64>,
    pub witness: Option<Witness>,
}

impl RankCensus {
    pub fn points(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Points of `P(W)` whose form has rank below 6.
    pub fn count_y(&self) -> u64 {
        self.histogram.range(..6).map(|(_, n)| n).sum()
    }
}

pub fn rank_census(w: &WSystem, workers: usize) -> Result<RankCensus, CensusError> {
    let space = ProjectiveSpace::new(w.q() as u64, 6);
    reduce_chunks(
        workers,
        0..space.count(),
        CHUNKS,
        |range| {
            let mut hist = [0u64; DIM + 1];
            let mut witness = None;
            let mut c = [0u8; DIM];
            for idx in range {
                space.point_into(idx, &mut c);
                let rank = w.combination(&c).rank(w.ctx());
                hist[rank] += 1;
                if witness.is_none() && rank != 4 && rank != 6 {
                    witness = Some(Witness { coeffs: c, rank });
                }
            }
            Ok(RankCensus {
                histogram: (0..=DIM)
                    .filter(|&r| hist[r] > 0)
                    .map(|r| (r, hist[r]))
                    .collect(),
                witness,
            })
        },
        |mut acc, part| {
            for (r, n) in part.histogram {
                *acc.histogram.entry(r).or_default() += n;
            }
            acc.witness = acc.witness.or(part.witness);
            Ok(acc)
        },
        RankCensus::default(),
    )
}

/// Walks canonical planes in an index range, handing each plane's packed
/// values `(W_k(r1, r2))_k` to `visit`.
struct PlaneWalker {
    q: u64,
    bias: u64,
    mats: Mats,
}

impl PlaneWalker {
    fn new(w: &WSystem) -> Self {
        Self {
            q: w.q() as u64,
            bias: packed::bias(w.q()),
            mats: w.matrices(),
        }
    }

    /// `a[k][m] = W_k(r1, e_m)`.
    fn left_apply(&self, r1: &Vec7) -> [[u8; DIM]; DIM] {
        let q = self.q as u32;
        std::array::from_fn(|k| {
            std::array::from_fn(|m| {
                let s: u32 = (0..DIM)
                    .map(|i| r1[i] as u32 * self.mats[k][i][m] as u32)
                    .sum();
                (s % q) as u8
            })
        })
    }

    fn walk(&self, range: Range<u64>, mut visit: impl FnMut(u64)) {
        let q = self.q;
        let Some((mut slot, mut offset)) = locate_plane(q, range.start) else {
            return;
        };
        let mut remaining = range.end.min(plane_count(q)).saturating_sub(range.start);
        while remaining > 0 {
            let (i, j) = PAIRS[slot];
            let (f1, f2) = free_positions(i, j);
            let block = pow(q, f1.len() + f2.len());
            let low = pow(q, f2.len());
            while remaining > 0 && offset < block {
                let [r1, r2] = plane_rows(q, slot, offset);
                let a = self.left_apply(&r1);
                let values: Vec7 = std::array::from_fn(|k| {
                    let s: u32 = (0..DIM).map(|m| a[k][m] as u32 * r2[m] as u32).sum();
                    (s % q as u32) as u8
                });
                let mut b = packed::pack(&values);
                let cols: Vec<u64> = f2
                    .iter()
                    .map(|&m| packed::pack(&std::array::from_fn(|k| a[k][m])))
                    .collect();
                let mut digits: Vec<u8> = f2.iter().map(|&m| r2[m]).collect();
                let steps = (low - offset % low).min(remaining);
                for s in 0..steps {
                    visit(b);
                    if s + 1 == steps {
                        break;
                    }
                    let mut t = digits.len();
                    loop {
                        t -= 1;
                        b = packed::add(b, cols[t], q, self.bias);
                        digits[t] += 1;
                        if digits[t] as u64 == q {
                            digits[t] = 0;
                        } else {
                            break;
                        }
                    }
                }
                remaining -= steps;
                offset += steps;
            }
            slot += 1;
            offset = 0;
        }
    }
}

/// Number of planes in `range` and how many of them lie in `X_W`, i.e. are
/// isotropic for all seven basis forms.
pub fn count_planes_and_x(
    w: &WSystem,
    range: Range<u64>,
    workers: usize,
) -> Result<(u64, u64), CensusError> {
    let walker = PlaneWalker::new(w);
    let range = range.start..range.end.min(plane_count(w.q() as u64));
    reduce_chunks(
        workers,
        range,
        CHUNKS,
        |r| {
            let (mut n, mut x) = (0u64, 0u64);
            walker.walk(r, |b| {
                n += 1;
                x += (b == 0) as u64;
            });
            Ok((n, x))
        },
        |a, b| Ok((a.0 + b.0, a.1 + b.1)),
        (0, 0),
    )
}

/// Same as [`count_planes_and_x`] on one thread, one plane at a time through
/// [`Plane2`] and `restrict_vanishes`.
pub fn count_planes_and_x_reference(w: &WSystem, range: Range<u64>) -> (u64, u64) {
    let ctx = w.ctx();
    Planes::range(w.q() as u64, range).fold((0, 0), |(n, x), t: Plane2| {
        let inside = w.forms().iter().all(|f| f.restrict_vanishes(ctx, &t));
        (n + 1, x + inside as u64)
    })
}

/// `#H`: pairs (plane, point of `P(W)`) with the form vanishing on the plane,
/// by a double loop.
pub fn count_h_brute(w: &WSystem, workers: usize, max_q: u32) -> Result<u64, CensusError> {
    if w.q() > max_q {
        return Err(CensusError::BruteForceRefused {
            what: "brute-force H census",
            q: w.q(),
            max_q,
        });
    }
    let q = w.q();
    let points = ProjectiveSpace::new(q as u64, 6).collect7();
    let walker = PlaneWalker::new(w);
    reduce_chunks(
        workers,
        0..plane_count(q as u64),
        CHUNKS,
        |r| {
            let mut n = 0u64;
            walker.walk(r, |b| {
                let b = packed::unpack(b);
                for c in &points {
                    let s: u32 = (0..DIM).map(|k| c[k] as u32 * b[k] as u32).sum();
                    n += s.is_multiple_of(q) as u64;
                }
            });
            Ok(n)
        },
        |a, b| checked_sum(a, b, "#H"),
        0,
    )
}

/// Counts of the frame bundle `H~` and its strata.
///
/// `H~_1` lies over forms of rank < 6, `H~_2` over the rest. Inside `H~_1`,
/// `H~_11` has `v1` in the kernel of the form and `H~_12` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TildeCounts {
    pub n_th: u64,
    pub n_th1: u64,
    pub n_th2: u64,
    pub n_th11: u64,
    pub n_th12: u64,
}

impl TildeCounts {
    fn checked_add(self, o: Self) -> Result<Self, CensusError> {
        Ok(Self {
            n_th: checked_sum(self.n_th, o.n_th, "#H~")?,
            n_th1: checked_sum(self.n_th1, o.n_th1, "#H~_1")?,
            n_th2: checked_sum(self.n_th2, o.n_th2, "#H~_2")?,
            n_th11: checked_sum(self.n_th11, o.n_th11, "#H~_11")?,
            n_th12: checked_sum(self.n_th12, o.n_th12, "#H~_12")?,
        })
    }

    fn record(&mut self, in_y: bool, v1_in_kernel: bool, n: u64) {
        self.n_th += n;
        if in_y {
            self.n_th1 += n;
            if v1_in_kernel {
                self.n_th11 += n;
            } else {
                self.n_th12 += n;
            }
        } else {
            self.n_th2 += n;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeMode {
    /// Every triple `(v1, v2, w)`; `q = 2` only.
    TripleBrute,
    /// Every pair `(w, v1)`, with the admissible `v2` counted in closed form.
    PairLevel,
}

fn mat_vec_is_zero(q: u32, m: &[[u8; DIM]; DIM], v: &Vec7) -> bool {
    m.iter().all(|row| {
        let s: u32 = row.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
        s.is_multiple_of(q)
    })
}

pub fn count_tilde_h(w: &WSystem, mode: TildeMode, workers: usize) -> Result<TildeCounts, CensusError> {
    match mode {
        TildeMode::TripleBrute => tilde_triples(w, workers),
        TildeMode::PairLevel => tilde_pairs(w, workers),
    }
}

fn tilde_triples(w: &WSystem, workers: usize) -> Result<TildeCounts, CensusError> {
    let q = w.q();
    if q > 2 {
        return Err(CensusError::BruteForceRefused {
            what: "triple-level H~ census",
            q,
            max_q: 2,
        });
    }
    let ctx = w.ctx();
    let space = ProjectiveSpace::new(q as u64, 6);
    let forms_p: Vec<(Vec7, bool, [[u8; DIM]; DIM])> = space
        .collect7()
        .into_iter()
        .map(|c| {
            let f = w.combination(&c);
            (c, f.rank(ctx) < 6, f.matrix(ctx))
        })
        .collect();
    let n_vec = pow(q as u64, DIM);
    let all: Vec<Vec7> = (0..n_vec)
        .map(|idx| {
            let mut v = [0u8; DIM];
            spread_digits(q as u64, idx, &(0..DIM).collect::<Vec<_>>(), &mut v);
            v
        })
        .collect();
    reduce_chunks(
        workers,
        1..n_vec,
        CHUNKS,
        |r| {
            let mut t = TildeCounts::default();
            for i1 in r {
                let v1 = &all[i1 as usize];
                let in_ker: Vec<bool> = forms_p
                    .iter()
                    .map(|(_, _, m)| mat_vec_is_zero(q, m, v1))
                    .collect();
                for v2 in &all {
                    if Plane2::span(ctx, v1, v2).is_none() {
                        continue;
                    }
                    let b: Vec7 = std::array::from_fn(|k| w.forms()[k].eval(ctx, v1, v2));
                    for (idx, (c, in_y, _)) in forms_p.iter().enumerate() {
                        let s: u32 = (0..DIM).map(|k| c[k] as u32 * b[k] as u32).sum();
                        if s.is_multiple_of(q) {
                            t.record(*in_y, in_ker[idx], 1);
                        }
                    }
                }
            }
            Ok(t)
        },
        TildeCounts::checked_add,
        TildeCounts::default(),
    )
}

/// Number of `v` in `F_q^7` (including 0) with `M v = 0`, by walking every
/// `v`. `cols[m]` is column `m` of `M` packed.
fn kernel_size(cols: &[u64; DIM], q: u64, bias: u64) -> u64 {
    let mut digits = [0u64; DIM - 1];
    let mut u = 0u64;
    let mut zeros = 0u64;
    let last = cols[DIM - 1];
    loop {
        let mut v = u;
        for _ in 0..q {
            zeros += (v == 0) as u64;
            v = packed::add(v, last, q, bias);
        }
        let mut t = DIM - 1;
        loop {
            if t == 0 {
                return zeros;
            }
            t -= 1;
            u = packed::add(u, cols[t], q, bias);
            digits[t] += 1;
            if digits[t] == q {
                digits[t] = 0;
            } else {
                break;
            }
        }
    }
}

fn tilde_pairs(w: &WSystem, workers: usize) -> Result<TildeCounts, CensusError> {
    let q = w.q() as u64;
    let bias = packed::bias(w.q());
    let ctx = w.ctx();
    let space = ProjectiveSpace::new(q, 6);
    let q7 = pow(q, 7);
    let with_kernel_v1 = q7 - q;
    let off_kernel_v1 = pow(q, 6) - q;
    let overflow = || CensusError::Overflow("#H~ per-form fiber".into());
    reduce_chunks(
        workers,
        0..space.count(),
        CHUNKS,
        |r| {
            let mut t = TildeCounts::default();
            let mut c = [0u8; DIM];
            for idx in r {
                space.point_into(idx, &mut c);
                let form = w.combination(&c);
                let m = form.matrix(ctx);
                let in_y = form.rank(ctx) < 6;
                let cols: [u64; DIM] =
                    std::array::from_fn(|col| packed::pack(&std::array::from_fn(|row| m[row][col])));
                let hits = kernel_size(&cols, q, bias) - 1;
                let n11 = hits.checked_mul(with_kernel_v1).ok_or_else(overflow)?;
                let n12 = (q7 - 1 - hits).checked_mul(off_kernel_v1).ok_or_else(overflow)?;
                let mut part = TildeCounts::default();
                part.record(in_y, true, n11);
                part.record(in_y, false, n12);
                t = t.checked_add(part)?;
            }
            Ok(t)
        },
        TildeCounts::checked_add,
        TildeCounts::default(),
    )
}

/// What to count and how.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusPlan {
    pub workers: usize,
    /// Run the brute-force `H` census (refused above `max_brute_h_q`).
    pub brute_h: bool,
    pub max_brute_h_q: u32,
    /// Also run the triple-level `H~` census (`q = 2` only).
    pub triple_brute: bool,
}

impl Default for CensusPlan {
    fn default() -> Self {
        Self {
            workers: 1,
            brute_h: false,
            max_brute_h_q: DEFAULT_MAX_BRUTE_H_Q,
            triple_brute: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusCounts {
    pub n_g: u64,
    pub n_p6: u64,
    pub n_p5: u64,
    pub n_x: u64,
    pub n_y: u64,
    pub n_h: Option<u64>,
    /// Pair-level frame-bundle counts.
    pub tilde: TildeCounts,
    /// Triple-level counts, when requested.
    pub tilde_brute: Option<TildeCounts>,
    pub rank_histogram: BTreeMap<usize, u64>,
}

/// Fails early when `#H~` could exceed 64 bits for this `q`.
pub fn check_capacity(q: u32) -> Result<(), CensusError> {
    let q = q as u128;
    let p6 = ProjectiveSpace::new(q as u64, 6).count() as u128;
    let bound = p6 * (q.pow(7) - 1) * (q.pow(7) - q);
    if bound > u64::MAX as u128 {
        return Err(CensusError::Overflow(format!(
            "#H~ can reach {bound} at q={q}, beyond 64-bit counters"
        )));
    }
    Ok(())
}

impl CensusPlan {
    pub fn run(&self, w: &WSystem) -> Result<CensusCounts, CensusError> {
        check_capacity(w.q())?;
        let q = w.q() as u64;
        let ranks = rank_census(w, self.workers)?;
        let (n_g, n_x) = count_planes_and_x(w, 0..plane_count(q), self.workers)?;
        let n_p5 = ProjectiveSpace::new(q, 5).points().count() as u64;
        let n_h = if self.brute_h {
            Some(count_h_brute(w, self.workers, self.max_brute_h_q)?)
        } else {
            None
        };
        let tilde = count_tilde_h(w, TildeMode::PairLevel, self.workers)?;
        let tilde_brute = if self.triple_brute {
            Some(count_tilde_h(w, TildeMode::TripleBrute, self.workers)?)
        } else {
            None
        };
        Ok(CensusCounts {
            n_g,
            n_p6: ranks.points(),
            n_p5,
            n_x,
            n_y: ranks.count_y(),
            n_h,
            tilde,
            tilde_brute,
            rank_histogram: ranks.histogram,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::altform::AlternatingForm;
    use crate::census::sample_w;
    use crate::ffield::FieldCtx;

    fn zero_system(q: u32) -> WSystem {
        WSystem::new_unchecked(FieldCtx::new(q).unwrap(), [AlternatingForm::ZERO; DIM], 0)
    }

    #[test]
    fn zero_system_contains_every_plane() {
        let w = zero_system(2);
        assert_eq!(count_planes_and_x(&w, 0..u64::MAX, 1).unwrap(), (2667, 2667));
        assert_eq!(count_h_brute(&w, 1, 3).unwrap(), 2667 * 127);
    }

    #[test]
    fn kernel_walk_matches_rank() {
        let ctx = FieldCtx::new(5).unwrap();
        let bias = packed::bias(5);
        for (form, expect_dim) in [
            (AlternatingForm::ZERO, 7),
            (AlternatingForm::elementary(1, 4), 5),
        ] {
            let m = form.matrix(&ctx);
            let cols = std::array::from_fn(|c| packed::pack(&std::array::from_fn(|r| m[r][c])));
            assert_eq!(kernel_size(&cols, 5, bias), 5u64.pow(expect_dim));
        }
    }

    #[test]
    fn walker_agrees_with_reference_on_odd_ranges() {
        let s = sample_w(3, 11, 100, 1).unwrap();
        for range in [0..99463, 17..18, 5000..5243, 99000..99463, 81000..97000] {
            assert_eq!(
                count_planes_and_x(&s.w, range.clone(), 1).unwrap(),
                count_planes_and_x_reference(&s.w, range.clone()),
                "{range:?}"
            );
        }
    }

    #[test]
    fn brute_h_refused_above_ceiling() {
        let w = zero_system(5);
        assert!(matches!(
            count_h_brute(&w, 1, 3),
            Err(CensusError::BruteForceRefused { q: 5, max_q: 3, .. })
        ));
        assert!(matches!(
            count_tilde_h(&zero_system(3), TildeMode::TripleBrute, 1),
            Err(CensusError::BruteForceRefused { q: 3, max_q: 2, .. })
        ));
    }

    #[test]
    fn capacity_limits() {
        for q in [2, 3, 5, 7] {
            check_capacity(q).unwrap();
        }
        assert!(matches!(check_capacity(11), Err(CensusError::Overflow(_))));
    }
}
