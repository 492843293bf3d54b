use mathieu_core::ErrorKind;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const SECTOR: i32 = 3;
    pub const PRECISION: i32 = 4;
    pub const VERIFY_FAILED: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mathieu_core::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => exit::VALIDATION,
                ErrorKind::Sector => exit::SECTOR,
                ErrorKind::Precision => exit::PRECISION,
                ErrorKind::Internal => exit::OTHER,
            },
            CliError::Invalid(_) => exit::VALIDATION,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::OTHER,
        }
    }
}

impl From<mathieu_core::ValidationError> for CliError {
    fn from(e: mathieu_core::ValidationError) -> Self {
        CliError::Core(e.into())
    }
}
