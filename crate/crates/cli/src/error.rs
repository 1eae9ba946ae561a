use mrl_core::analytics::AnalyticsError;
use mrl_core::explicit::ExplicitError;
use mrl_core::moebius::MoebiusError;
use mrl_core::zeros::ZeroError;

/// Exit codes: 2 bad input, 3 missing resource, 4 unsupported parameter.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Missing(String),
    Unsupported(String),
    /// The reader closed stdout; not an error.
    Closed,
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Missing(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Closed => 0,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Missing(m) | CliError::Unsupported(m) => m,
            CliError::Closed => "",
        }
    }

    pub fn from_zero(e: ZeroError) -> Self {
        match e {
            ZeroError::Io(m) => CliError::Missing(m),
            other => CliError::Usage(other.to_string()),
        }
    }

    pub fn from_moebius(e: MoebiusError) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn from_explicit(e: ExplicitError) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn from_analytics(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::UnsupportedLambda(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Usage(format!("output: {e}"))
    }
}
