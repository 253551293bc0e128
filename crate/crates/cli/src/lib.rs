//! Command-line frontend: instance files, commands, and reports.

pub mod commands;
pub mod instance;
pub mod report;

/// A command failure with its process exit code.
///
/// 1 usage/parse error, 2 family validation failure, 3 internal consistency
/// failure (method or oracle disagreement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError { code: 1, message }
    }

    pub fn validation(message: String) -> Self {
        CliError { code: 2, message }
    }

    pub fn internal(message: String) -> Self {
        CliError { code: 3, message }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}
