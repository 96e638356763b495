//! Point counting over `F_q` for a 7-dimensional space `W` of alternating
//! forms on `F_q^7`.
//!
//! All counts are reductions over contiguous index ranges of the canonical
//! streams in [`enumerate`]. Work is split into a fixed number of chunks
//! that does not depend on the worker count, and per-chunk results are
//! combined in chunk order, so every count is independent of parallelism.

mod count;
pub mod enumerate;
mod sample;

use std::ops::Range;

use rayon::prelude::*;
use thiserror::Error;

use crate::altform::{row_reduce, AlternatingForm, DIM, NUM_COEFFS};
use crate::ffield::{FieldCtx, FieldError};

pub use count::{
    count_h_brute, count_planes_and_x, count_planes_and_x_reference, count_tilde_h,
    check_capacity, rank_census, CensusCounts, CensusPlan, RankCensus, TildeCounts, TildeMode,
    DEFAULT_MAX_BRUTE_H_Q,
};
pub use sample::{check_genericity, sample_w, Genericity, Sampled, SamplingStats, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the 7 basis forms are linearly dependent (span has dimension {rank})")]
    Dependent { rank: usize },
    #[error("no generic W after {attempts} attempts; last rejection: {last_violation}")]
    SamplingExhausted { attempts: u32, last_violation: String },
    #[error("max_retries must be at least 1")]
    NoAttempts,
    #[error("{what} refused for q={q} (limit q<={max_q})")]
    BruteForceRefused {
        what: &'static str,
        q: u32,
        max_q: u32,
    },
    #[error("count overflow: {0}")]
    Overflow(String),
}

/// An ordered basis of `W` together with its field and sampling seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSystem {
    ctx: FieldCtx,
    forms: [AlternatingForm; DIM],
    seed: u64,
}

impl WSystem {
    /// Checks that the forms span a 7-dimensional space.
    pub fn new(ctx: FieldCtx, forms: [AlternatingForm; DIM], seed: u64) -> Result<Self, CensusError> {
        let rank = coefficient_rank(&ctx, &forms);
        if rank != DIM {
            return Err(CensusError::Dependent { rank });
        }
        Ok(Self { ctx, forms, seed })
    }

    /// Skips the independence check. Meant for degenerate test systems.
    pub fn new_unchecked(ctx: FieldCtx, forms: [AlternatingForm; DIM], seed: u64) -> Self {
        Self { ctx, forms, seed }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.p()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn forms(&self) -> &[AlternatingForm; DIM] {
        &self.forms
    }

    /// `sum_k coeffs[k] * W_k`.
    pub fn combination(&self, coeffs: &[u8; DIM]) -> AlternatingForm {
        AlternatingForm::linear_combination(&self.ctx, &self.forms, coeffs)
    }

    pub(crate) fn matrices(&self) -> [[[u8; DIM]; DIM]; DIM] {
        self.forms.map(|w| w.matrix(&self.ctx))
    }
}

/// Rank of the 7x21 coefficient matrix.
pub fn coefficient_rank(ctx: &FieldCtx, forms: &[AlternatingForm; DIM]) -> usize {
    let mut rows: [[u8; NUM_COEFFS]; DIM] = forms.map(|w| *w.coeffs());
    row_reduce(ctx, &mut rows).len()
}

/// Number of chunks used for every parallel reduction.
const CHUNKS: u64 = 512;

pub(crate) fn chunk_ranges(range: Range<u64>, chunks: u64) -> Vec<Range<u64>> {
    let len = range.end - range.start;
    let n = chunks.min(len).max(1);
    (0..n)
        .map(|c| {
            let lo = range.start + (len as u128 * c as u128 / n as u128) as u64;
            let hi = range.start + (len as u128 * (c + 1) as u128 / n as u128) as u64;
            lo..hi
        })
        .collect()
}

/// Maps `f` over the chunks of `range` and folds the results in chunk order.
///
/// `workers <= 1` runs on the calling thread.
pub(crate) fn reduce_chunks<T, F, C>(
    workers: usize,
    range: Range<u64>,
    chunks: u64,
    f: F,
    combine: C,
    init: T,
) -> Result<T, CensusError>
where
    T: Send,
    F: Fn(Range<u64>) -> Result<T, CensusError> + Sync,
    C: Fn(T, T) -> Result<T, CensusError>,
{
    let ranges = chunk_ranges(range, chunks);
    let parts: Vec<Result<T, CensusError>> = if workers <= 1 {
        ranges.into_iter().map(&f).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| ranges.into_par_iter().map(&f).collect())
    };
    parts.into_iter().try_fold(init, |acc, part| combine(acc, part?))
}

pub(crate) fn checked_sum(a: u64, b: u64, what: &str) -> Result<u64, CensusError> {
    a.checked_add(b)
        .ok_or_else(|| CensusError::Overflow(what.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_exactly() {
        for (range, n) in [(0..10u64, 3u64), (5..6, 512), (0..0, 4), (100..1000, 512)] {
            let parts = chunk_ranges(range.clone(), n);
            assert_eq!(parts.first().unwrap().start, range.start);
            assert_eq!(parts.last().unwrap().end, range.end);
            for w in parts.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
    }

    #[test]
    fn dependent_forms_rejected() {
        let ctx = FieldCtx::new(3).unwrap();
        // (0,1), ..., (0,6), then (0,1) again
        let forms = std::array::from_fn(|k| AlternatingForm::elementary(0, 1 + k % 6));
        let err = WSystem::new(ctx, forms, 0).unwrap_err();
        assert_eq!(err, CensusError::Dependent { rank: 6 });
    }
}
