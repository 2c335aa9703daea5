use thiserror::Error;

use crate::conditions::ConditionReport;

pub type Result<T> = std::result::Result<T, QicError>;

#[derive(Debug, Error)]
pub enum QicError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("density operator trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("Hermitian eigensolver failed: {0}")]
    EigenFailure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown register '{0}'")]
    UnknownRegister(String),

    #[error("register sets overlap on '{0}'")]
    OverlappingRegisters(String),

    #[error("system has no variable named '{0}'")]
    UnknownVariable(String),

    #[error("region is unbounded")]
    UnboundedRegion,

    #[error("region is empty (origin infeasible)")]
    EmptyRegion,

    #[error("materialization budget exceeded: dimension {dim} > {budget}")]
    Budget { dim: usize, budget: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid channel state at input {indices:?}: {reason}")]
    InvalidState { indices: Vec<usize>, reason: String },

    #[error("precondition failed: {} interference does not hold (min slack {:.3e})", .0.mode, .0.min_slack)]
    Precondition(Box<ConditionReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
