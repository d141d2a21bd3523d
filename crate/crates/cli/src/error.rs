use std::fmt;

use herbst_core::Error;

/// Failure classes, one per exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or input files.
    Validation(String),
    /// The computation itself failed.
    Numerical(String),
    /// A verification suite or bound check reported a failure.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) => 1,
            Self::Numerical(_) => 2,
            Self::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation(m) => write!(f, "invalid input: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
            Self::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(msg) => Self::Validation(msg),
            Error::Domain { .. } | Error::Pole(_) | Error::BelowThreshold { .. } => {
                Self::Validation(e.to_string())
            }
            _ => Self::Numerical(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_exit_codes() {
        assert_eq!(CliError::from(Error::Invalid("x".into())).exit_code(), 1);
        assert_eq!(
            CliError::from(Error::BelowThreshold {
                lambda: 1.0,
                lambda0: 2.0
            })
            .exit_code(),
            1
        );
        assert_eq!(CliError::from(Error::Eigen("x".into())).exit_code(), 2);
        assert_eq!(
            CliError::from(Error::Quadrature {
                estimate: 1.0,
                error: 1.0
            })
            .exit_code(),
            2
        );
        assert_eq!(CliError::Verification("x".into()).exit_code(), 3);
    }
}
