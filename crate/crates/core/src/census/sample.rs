//! Seeded sampling of a generic `W` and the rank-dichotomy certificate.
//!
//! The generator is SplitMix64 seeded directly with the 64-bit seed. Each
//! attempt draws 7 x 21 coefficients, form by form, each form in
//! coefficient-slot order. A coefficient is `x mod q` for the first 64-bit
//! output `x` below `floor((2^64 - 1) / q) * q`; larger outputs are discarded.

use std::collections::BTreeMap;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{rank_census, CensusError, WSystem};
use crate::altform::{AlternatingForm, Vec7, DIM, NUM_COEFFS};
use crate::ffield::FieldCtx;

/// A nonzero combination whose rank is neither 4 nor 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub coeffs: Vec7,
    pub rank: usize,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(u8::to_string).collect();
        write!(f, "rank {} at coefficients ({})", self.rank, c.join(","))
    }
}

/// Result of testing every point of `P(W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genericity {
    /// rank -> number of points of `P(W)`
    pub histogram: BTreeMap<usize, u64>,
    /// Lowest-index violation in projective stream order.
    pub witness: Option<Witness>,
}

impl Genericity {
    pub fn passes(&self) -> bool {
        self.witness.is_none() && self.histogram.keys().all(|r| *r == 4 || *r == 6)
    }
}

pub fn check_genericity(w: &WSystem, workers: usize) -> Result<Genericity, CensusError> {
    let census = rank_census(w, workers)?;
    Ok(Genericity {
        histogram: census.histogram,
        witness: census.witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SamplingStats {
    pub attempts: u32,
    /// One entry per rejected attempt, in order.
    pub rejected_for: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Sampled {
    pub w: WSystem,
    pub genericity: Genericity,
    pub stats: SamplingStats,
}

fn draw_residue(rng: &mut SplitMix64, q: u64) -> u8 {
    let zone = (u64::MAX / q) * q;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % q) as u8;
        }
    }
}

fn draw_forms(rng: &mut SplitMix64, ctx: &FieldCtx) -> [AlternatingForm; DIM] {
    let q = ctx.p() as u64;
    std::array::from_fn(|_| {
        let coeffs: [u8; NUM_COEFFS] = std::array::from_fn(|_| draw_residue(rng, q));
        AlternatingForm::from_coeffs(ctx, coeffs).expect("reduced")
    })
}

/// Draws candidate systems from the seeded stream until one has independent
/// forms and passes the rank dichotomy.
pub fn sample_w(q: u32, seed: u64, max_retries: u32, workers: usize) -> Result<Sampled, CensusError> {
    let ctx = FieldCtx::new(q)?;
    if max_retries == 0 {
        return Err(CensusError::NoAttempts);
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut stats = SamplingStats::default();
    for _ in 0..max_retries {
        stats.attempts += 1;
        let forms = draw_forms(&mut rng, &ctx);
        let w = match WSystem::new(ctx.clone(), forms, seed) {
            Ok(w) => w,
            Err(CensusError::Dependent { rank }) => {
                stats.rejected_for.push(format!("dependent basis (rank {rank})"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let genericity = check_genericity(&w, workers)?;
        match genericity.witness {
            Some(witness) => stats.rejected_for.push(witness.to_string()),
            None => {
                return Ok(Sampled {
                    w,
                    genericity,
                    stats,
                })
            }
        }
    }
    Err(CensusError::SamplingExhausted {
        attempts: stats.attempts,
        last_violation: stats.rejected_for.last().cloned().unwrap_or_default(),
    })
}
