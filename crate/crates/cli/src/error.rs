use algebroid_paths::CoreError;
use finite_groupoid::GroupoidError;
use quadratic_field::QuadError;
use thiserror::Error;

/// Everything that makes a run unusable; all of these exit with code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema violation at {}: {message}", show(pointer))]
    Schema { pointer: String, message: String },
    #[error("cannot read input {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("invalid input at {}: {source}", show(pointer))]
    Core { pointer: String, source: CoreError },
    #[error("invalid input at {}: {source}", show(pointer))]
    Groupoid { pointer: String, source: GroupoidError },
    #[error("invalid input at {}: {source}", show(pointer))]
    Quad { pointer: String, source: QuadError },
}

fn show(pointer: &str) -> &str {
    if pointer.is_empty() {
        "document root"
    } else {
        pointer
    }
}

impl CliError {
    pub fn schema(pointer: &str, message: impl Into<String>) -> Self {
        Self::Schema {
            pointer: pointer.to_string(),
            message: message.into(),
        }
    }

    /// JSON pointer of the offending value, when known.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            Self::Schema { pointer, .. }
            | Self::Core { pointer, .. }
            | Self::Groupoid { pointer, .. }
            | Self::Quad { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

/// Attaches a JSON pointer to library errors.
pub trait At<T> {
    fn at(self, pointer: &str) -> Result<T, CliError>;
}

impl<T> At<T> for Result<T, CoreError> {
    fn at(self, pointer: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            pointer: pointer.to_string(),
            source,
        })
    }
}

impl<T> At<T> for Result<T, GroupoidError> {
    fn at(self, pointer: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Groupoid {
            pointer: pointer.to_string(),
            source,
        })
    }
}

impl<T> At<T> for Result<T, QuadError> {
    fn at(self, pointer: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Quad {
            pointer: pointer.to_string(),
            source,
        })
    }
}
