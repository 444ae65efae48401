use serde_json::{json, Value};

/// Exit code for a yes/no command whose answer is "no".
pub const EXIT_FALSE: i32 = 1;
/// Exit code for any error.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Library(paramkit::Error),
    Io(String),
    Usage(String),
    UnknownCommand(String),
}

impl From<paramkit::Error> for CliError {
    fn from(e: paramkit::Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Library(e) => e.code(),
            CliError::Io(_) => "E_IO",
            CliError::Usage(_) => "E_USAGE",
            CliError::UnknownCommand(_) => "E_UNKNOWN_COMMAND",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Library(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
            CliError::UnknownCommand(c) => format!("unknown command `{c}`"),
        }
    }
}

/// What a command produced: a verdict for yes/no commands, text lines and a JSON payload.
#[derive(Debug)]
pub struct Report {
    pub verdict: Option<bool>,
    pub text: Vec<String>,
    pub data: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn verdict(verdict: bool, text: Vec<String>, data: Value) -> Self {
        Report {
            verdict: Some(verdict),
            text,
            data,
            warnings: Vec::new(),
        }
    }

    pub fn info(text: Vec<String>, data: Value) -> Self {
        Report {
            verdict: None,
            text,
            data,
            warnings: Vec::new(),
        }
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => EXIT_FALSE,
            _ => 0,
        }
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({
            "command": command,
            "status": "ok",
            "verdict": self.verdict,
            "result": self.data,
            "warnings": self.warnings,
        })
    }
}

pub fn error_json(command: &str, err: &CliError) -> Value {
    json!({
        "command": command,
        "status": "error",
        "error": { "code": err.code(), "message": err.message() },
    })
}
