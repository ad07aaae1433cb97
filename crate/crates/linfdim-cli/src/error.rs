use std::fmt;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable, malformed or rejected input. Exit code 1.
    Input(String),
    /// A search budget or size cap ran out. Exit code 2.
    Budget(String),
    /// An internal check failed. Exit code 3.
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Budget(m) => write!(f, "budget exhausted: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<linfdim::Error> for CliError {
    fn from(e: linfdim::Error) -> Self {
        match e {
            linfdim::Error::InvalidInput(m) => CliError::Input(m),
            linfdim::Error::CapExceeded { .. } => CliError::Budget(e.to_string()),
            linfdim::Error::Verification(m) => CliError::Verification(m),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("bad JSON: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
