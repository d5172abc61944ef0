use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} outside validated range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("point is not in the interior of the {0}")]
    Domain(&'static str),

    #[error("matrix violates {invariant}: defect {defect:e}")]
    Invariant { invariant: &'static str, defect: f64 },

    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("singular matrix (|det| = {0:e})")]
    Singular(f64),

    #[error("pole of {0}")]
    Pole(&'static str),

    #[error("step {step} exceeds the discretization guard {limit}")]
    StepTooLarge { step: f64, limit: f64 },

    #[error("moment of order {0} does not exist for this law")]
    Divergent(f64),

    #[error("scan resolution failure on bracket [{lo}, {hi}]: {reason}")]
    Resolution { lo: f64, hi: f64, reason: String },

    #[error("insufficient resolution: relative eigenvalue shift {shift:e} under grid doubling")]
    Refinement { shift: f64 },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),
}
