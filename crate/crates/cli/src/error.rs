use serde::Serialize;
use thiserror::Error;

/// Exit codes: 2 configuration, 3 numerical consistency, 4 size limit.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    SizeLimit(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Serialize)]
struct Report<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn config(msg: String) -> Self {
        CliError::Config(msg)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::SizeLimit(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical(_) => "numerical",
            CliError::SizeLimit(_) => "size-limit",
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON for the diagnostic stream.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&Report {
            error: self.kind(),
            message: self.to_string(),
            exit_code: self.exit_code(),
        })
        .expect("report serialises")
    }
}

impl From<tfcompass::Error> for CliError {
    fn from(e: tfcompass::Error) -> Self {
        match e {
            tfcompass::Error::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            e if e.is_numerical() || matches!(e, tfcompass::Error::OddDimension(_)) => {
                CliError::Numerical(e.to_string())
            }
            e => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
