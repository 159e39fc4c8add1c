//! CLI error classification. Exit code 2 covers parse and validation
//! errors, exit code 3 covers resource-bound errors.

use comtrace_core::alphabet::AlphabetError;
use comtrace_core::cdgraph::CdError;
use comtrace_core::lsos::LsosError;
use comtrace_core::{MonoidError, ParseError, SosError};

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: EXIT_INVALID }
    }

    pub fn limit(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: EXIT_LIMIT }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<AlphabetError> for CliError {
    fn from(e: AlphabetError) -> Self {
        match e {
            AlphabetError::TooManySteps { .. } => CliError::limit(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::MemberCapExceeded { .. } => CliError::limit(e.to_string()),
            MonoidError::AlphabetMismatch => CliError::invalid(e.to_string()),
        }
    }
}

impl From<SosError> for CliError {
    fn from(e: SosError) -> Self {
        match e {
            SosError::TooManyNodes { .. } => CliError::limit(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<LsosError> for CliError {
    fn from(e: LsosError) -> Self {
        match e {
            LsosError::ClassTooLarge { .. } => CliError::limit(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<CdError> for CliError {
    fn from(e: CdError) -> Self {
        match e {
            CdError::ClassTooLarge { .. } => CliError::limit(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}
