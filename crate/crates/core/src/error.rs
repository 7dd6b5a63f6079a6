use thiserror::Error;

use crate::expr::ExprError;

/// Which leg of a split solve an error came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegTag {
    Backward,
    Forward,
}

impl std::fmt::Display for LegTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LegTag::Backward => f.write_str("backward"),
            LegTag::Forward => f.write_str("forward"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid step size {h}: must be positive and no larger than the leg length {length}")]
    InvalidStep { h: f64, length: f64 },

    #[error("invalid interval [{lo}, {hi}]: bounds must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value produced while evaluating the right-hand side near x = {x}")]
    NumericOverflow { x: f64 },

    #[error("method {0} has no explicit decrement function")]
    UnsupportedMethod(&'static str),

    #[error("segment break point x = {breakpoint} does not lie on the grid of the {leg} leg (h = {h})")]
    GridMisalignment { breakpoint: f64, leg: LegTag, h: f64 },

    #[error("observed order is undefined: max error at {resolution} resolution is zero")]
    DegenerateOrder { resolution: &'static str },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("step {index} failed: {source}")]
    AtStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{leg} leg failed: {source}")]
    Leg {
        leg: LegTag,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Expression(#[from] ExprError),
}

impl Error {
    /// Strips step and leg annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } | Error::Leg { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
