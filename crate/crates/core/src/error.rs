use thiserror::Error;

use crate::Q;

/// Errors produced by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("breakpoints must be strictly increasing within [0,1]: saw {0} after {1}")]
    BadBreakpoints(Q, Q),

    #[error("first breakpoint must be 0, got {0}")]
    MissingLeftEndpoint(Q),

    #[error("argument {0} outside [0,1]")]
    OutOfRange(Q),

    #[error("antiderivative coefficients must sum to 0, got {0}")]
    CoefficientSum(Q),

    #[error("node {0} outside [0,1]")]
    NodeOutOfRange(Q),

    #[error("interval requires x < y, got x={x}, y={y}")]
    EmptyInterval { x: Q, y: Q },

    #[error("crossing profile is empty but the difference is nonzero")]
    InconsistentProfile,

    #[error("mass/mean preconditions violated: mass {mass_lhs} vs {mass_rhs}, mean {mean_lhs} vs {mean_rhs}")]
    MassMeanMismatch {
        mass_lhs: Q,
        mass_rhs: Q,
        mean_lhs: Q,
        mean_rhs: Q,
    },

    #[error("equal-mass/equal-mean hypotheses fail: mass {mass}, mean {mean}")]
    NecessaryConditionsViolated { mass: Q, mean: Q },

    #[error("undefined expression: {0}")]
    UndefinedExpression(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("random instance generation exhausted retries: {0}")]
    GenerationFailed(String),
}
