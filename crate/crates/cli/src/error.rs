use std::fmt;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;

/// Failure of a subcommand, split by the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or an operation the inputs do not support (exit 1).
    Usage(String),
    /// Unreadable or malformed input data (exit 2).
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    /// Prefixes the message with where it came from, e.g. a file name.
    pub fn context(self, what: impl fmt::Display) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
            CliError::Data(m) => CliError::Data(format!("{what}: {m}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<hammer_core::Error> for CliError {
    fn from(err: hammer_core::Error) -> Self {
        match err.kind() {
            hammer_core::ErrorKind::Usage => CliError::Usage(err.to_string()),
            hammer_core::ErrorKind::Data => CliError::Data(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
