//! Exact verification of the Pfaffian-Grassmannian zero-divisor relation.
//!
//! * [`motivic`] does the class algebra in `Z[L]` with formal symbols
//!   `[X]` and `[Y]`.
//! * [`census`] counts `F_q`-points of the same varieties and fibrations, so
//!   each class identity can be checked as an integer identity.
//!
//! [`ffield`] and [`altform`] are the arithmetic underneath.

pub mod altform;
pub mod census;
pub mod ffield;
pub mod motivic;

pub use altform::{AlternatingForm, Plane2, Vec7};
pub use census::{CensusCounts, CensusError, CensusPlan, WSystem};
pub use ffield::{FieldCtx, FieldError, Fp};
pub use motivic::{LPoly, MotivicError, MotivicExpr};
