use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three families that the command line maps onto exit
/// codes: malformed or inadmissible input, numerical breakdown, and a limit
/// procedure that never settled.
#[derive(Debug, Error, Clone)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch in {what}: expected {expected}, found {found}")]
    Shape {
        what: String,
        expected: String,
        found: String,
    },

    #[error("matrices {i} and {j} do not commute (defect {defect:.3e})")]
    NonCommuting { i: usize, j: usize, defect: f64 },

    #[error("not a cochain map: defect {defect:.3e} in degree {degree}")]
    NotChainMap { degree: i32, defect: f64 },

    #[error("maps do not commute in degree {degree} (defect {defect:.3e})")]
    MapsDoNotCommute { degree: i32, defect: f64 },

    #[error("sequence is not exact at {node}: {detail}")]
    NotExact { node: String, detail: String },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("Lefschetz number undefined: induced map on {0} cohomology is singular")]
    LefschetzUndefined(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("zero not isolated or multiplicity too large (no stabilization up to order {max_order})")]
    NotIsolated { max_order: usize },

    #[error("system not zero-dimensional in region: {0}")]
    NotZeroDimensional(String),

    #[error("zero on the region boundary near {0:?}")]
    BoundaryZero(Vec<Complex64>),

    #[error("near-circle zero: winding quadrature {0:.6} is not close to an integer")]
    NearCircleZero(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("limit did not stabilize within {steps} steps")]
    NonStabilization { steps: usize, tail: Vec<Complex64> },
}

/// Coarse grouping of [`Error`] used for exit codes and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
    NonStabilization,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidArgument(_)
            | Error::Shape { .. }
            | Error::NonCommuting { .. }
            | Error::NotChainMap { .. }
            | Error::MapsDoNotCommute { .. }
            | Error::Precondition(_)
            | Error::Unsupported(_) => ErrorClass::Validation,
            Error::NonStabilization { .. } => ErrorClass::NonStabilization,
            _ => ErrorClass::Numerical,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn shape(what: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        Error::Shape {
            what: what.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
