use complex_susy::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CERTIFICATION: i32 = 2;

impl CliError {
    /// 2 for failures of a PIV candidate, 1 for everything the user can fix
    /// by changing the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Certification(_) => EXIT_CERTIFICATION,
            CliError::Core(
                CoreError::DegenerateSolution
                | CoreError::DegenerateTriple { .. }
                | CoreError::NoValidAssignment { .. }
                | CoreError::ZeroCrossing { .. },
            ) => EXIT_CERTIFICATION,
            _ => EXIT_VALIDATION,
        }
    }
}
