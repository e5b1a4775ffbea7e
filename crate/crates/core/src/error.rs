//! Error type shared by every module of the crate.

use std::fmt;

/// Errors raised by numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// The requested family/operation combination has no defined result.
    Unsupported(String),
    /// A pointwise evaluation failed (underflow to zero norm, internal
    /// inconsistency beyond numerical slack, ...).
    Evaluation(String),
    /// Adaptive quadrature exhausted its evaluation budget. The best
    /// estimate reached so far is reported for diagnostics.
    NonConvergence {
        detail: String,
        value: f64,
        err_estimate: f64,
        evaluations: usize,
    },
    /// A polynomial remainder chain or iterative solver degenerated
    /// (near-multiple roots, collapsed pivots).
    Degenerate(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Evaluation(msg) => write!(f, "evaluation error: {msg}"),
            Error::NonConvergence {
                detail,
                value,
                err_estimate,
                evaluations,
            } => write!(
                f,
                "quadrature did not converge: {detail} \
                 (best estimate {value:e} +- {err_estimate:e} after {evaluations} evaluations)"
            ),
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
