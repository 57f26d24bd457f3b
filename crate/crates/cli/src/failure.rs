use std::fmt;

use splitcut::SolveError;

pub const EXIT_OK: u8 = 0;
/// Internal error, or engines disagreeing under `oracle`.
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INSTANCE: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, error: anyhow::anyhow!("{msg}") }
    }

    pub fn instance(e: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_INSTANCE, error: e.into() }
    }

    pub fn internal(e: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_FAILURE, error: e.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Spec(_) => EXIT_INSTANCE,
            SolveError::TooLarge { .. } | SolveError::MemoryBudget { .. } => EXIT_RESOURCE,
            _ => EXIT_FAILURE,
        };
        Failure { code, error: e.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::internal(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}
