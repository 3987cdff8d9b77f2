use gmf_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A mathematical check or precondition failed; exit code 1.
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Math(_) => "mathematical",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidField(_)
            | Error::CoefficientNotInField(_)
            | Error::UnknownVariable(_)
            | Error::Syntax { .. }
            | Error::InvalidRing(_)
            | Error::Inhomogeneous(_)
            | Error::Shape(_)
            | Error::InterfaceMismatch(_)
            | Error::EmptyWindow { .. } => CliError::Input(e.to_string()),
            Error::Degree(_)
            | Error::NotInImage { .. }
            | Error::InvalidFactorization(_)
            | Error::InvalidMorphism(_)
            | Error::SyzygyCapExceeded { .. }
            | Error::Precondition(_)
            | Error::NotFiniteDimensional(_) => CliError::Math(e.to_string()),
        }
    }
}
