use qic_core::QicError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] QicError),

    #[error("input error: {0}")]
    Input(String),

    #[error("property failure: {0}")]
    Property(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                QicError::Budget { .. } => EXIT_BUDGET,
                QicError::Precondition(_)
                | QicError::EigenFailure(_)
                | QicError::UnboundedRegion
                | QicError::EmptyRegion => EXIT_PROPERTY,
                _ => EXIT_INPUT,
            },
            CliError::Input(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_INPUT,
            CliError::Property(_) => EXIT_PROPERTY,
        }
    }
}
