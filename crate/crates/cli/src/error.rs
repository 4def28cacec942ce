use ortho_core::io::IoError;
use ortho_core::nonarch::NonarchError;
use ortho_core::orthograph::GraphError;
use ortho_core::quadspace::SpaceError;
use ortho_core::rotation::RotationError;
use thiserror::Error;

/// Anything that prevents a command from producing a report. All of these
/// map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{what}: {source}")]
    Input { what: String, source: IoError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error(transparent)]
    Nonarch(#[from] NonarchError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub trait Context<T> {
    /// Tags an input error with the argument or file it came from.
    fn input(self, what: &str) -> Result<T>;
}

impl<T> Context<T> for Result<T, IoError> {
    fn input(self, what: &str) -> Result<T> {
        self.map_err(|source| CliError::Input { what: what.to_string(), source })
    }
}
