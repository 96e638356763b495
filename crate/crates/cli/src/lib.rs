//! Verification harness: runs the symbolic and numeric suites, reads and
//! writes `W` systems, and renders reports.

pub mod harness;
pub mod report;
pub mod wfile;

use pgcensus_core::{CensusError, MotivicError};
use thiserror::Error;

pub use harness::{census_report, run_numeric, run_symbolic, Level, NumericOptions};
pub use report::VerificationReport;
pub use wfile::{load_w, save_w, WSystemFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const SAMPLING_EXHAUSTED: i32 = 2;
    pub const OVERFLOW: i32 = 3;
    pub const USAGE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
    #[error("malformed W file: {0}")]
    MalformedW(String),
    #[error("W is not generic: {0}")]
    NotGeneric(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Motivic(#[from] MotivicError),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Overflow(_) | Self::Motivic(MotivicError::Overflow) => exit::OVERFLOW,
            Self::Census(CensusError::Overflow(_)) => exit::OVERFLOW,
            Self::Census(CensusError::SamplingExhausted { .. }) => exit::SAMPLING_EXHAUSTED,
            Self::Census(CensusError::Field(_)) => exit::USAGE,
            Self::Census(_) | Self::Motivic(_) => exit::USAGE,
            Self::Usage(_) | Self::Io(_) | Self::MalformedW(_) | Self::NotGeneric(_) => exit::USAGE,
        }
    }
}
