use fincat_core::linalg::FieldSpec;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid workspace: {0}")]
    Load(String),
    #[error("mixed fields: workspace is over {workspace} but {entity} is over {found}")]
    MixedField { workspace: FieldSpec, entity: String, found: FieldSpec },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("at column {column}: {message}")]
    Eval { column: usize, message: String },
    #[error("at column {column}: {message}")]
    Precondition { column: usize, message: String },
    #[error(transparent)]
    Core(#[from] fincat_core::Error),
}

impl CliError {
    pub fn load(message: impl Into<String>) -> Self {
        CliError::Load(message.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
