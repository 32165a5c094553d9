//! Exact-arithmetic tools for two-dimensional representation theory.
//!
//! The crate builds finite subgroups of `GL_2` over the cyclotomic closure of
//! the rationals, computes their character tables and Schur multipliers,
//! assembles McKay quivers (plain and twisted by a second cohomology class),
//! decides log terminality of plane curve germ configurations with standard
//! coefficients, and classifies noncommutative plane curves of finite
//! representation type together with their AR-quivers.
//!
//! All arithmetic is exact: rationals, cyclotomic integers and residue rings.
//! There is no floating point on any correctness path.

pub mod chartab;
pub mod cohomology;
pub mod curves;
pub mod cyclotomic;
pub mod descriptor;
pub mod fp;
pub mod logterm;
pub mod mat2;
pub mod matgroups;
pub mod mckay;
pub mod modarith;
pub mod par;
pub mod quiver;
pub mod ramification;
pub mod verify;

pub use cyclotomic::{CycNum, Rat};
pub use descriptor::{GroupDescriptor, Sl2Type};
pub use mat2::Mat2;
pub use matgroups::{AbstractGroup, GroupOps, MatGroup};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("table discrepancy: {0}")]
    Discrepancy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
