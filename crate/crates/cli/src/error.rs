use thiserror::Error;

use qspec_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("output error: {0}")]
    Io(String),
}

impl CliError {
    /// 1 for bad input, 2 for numeric trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NumericFailure { .. }
                | CoreError::Division(_)
                | CoreError::NotARoot { .. }
                | CoreError::DegenerateRecurrence { .. } => 2,
                _ => 1,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(CoreError::Domain("x".into())).exit_code(), 1);
        assert_eq!(CliError::from(CoreError::Division("x".into())).exit_code(), 2);
    }
}
