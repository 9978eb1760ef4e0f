use std::fmt;

/// A failure with the process exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

/// Malformed config or arguments.
pub const EXIT_PARSE: u8 = 2;
/// Well-formed config with a value outside its allowed range.
pub const EXIT_INVALID: u8 = 3;
/// Run directory whose files do not match the manifest.
pub const EXIT_INTEGRITY: u8 = 4;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, message)
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }

    pub fn integrity(message: impl Into<String>) -> Self {
        Self::new(EXIT_INTEGRITY, message)
    }

    pub fn other(message: impl Into<String>) -> Self {
        Self::new(1, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<swarmbench::Error> for CliError {
    fn from(e: swarmbench::Error) -> Self {
        match e {
            swarmbench::Error::InvalidConfig { .. } => Self::invalid(e.to_string()),
            other => Self::other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::other(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
