use std::fmt;

use plathom::homology::moves::MoveError;
use plathom::homology::HomologyError;
use plathom::diagram::DiagramError;

/// Failures that stop a command before it can report checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Window(String),
    NotAComplex(String),
    Move(String),
    Config(String),
    Io(String),
    Usage(String),
}

impl CliError {
    /// Stable machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Window(_) => "window",
            CliError::NotAComplex(_) => "not-a-complex",
            CliError::Move(_) => "move",
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Window(m)
            | CliError::NotAComplex(m)
            | CliError::Move(m)
            | CliError::Config(m)
            | CliError::Io(m)
            | CliError::Usage(m) => m,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.message() } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.kind(), self.message())
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::WindowTooSmall { .. } => CliError::Window(e.to_string()),
            HomologyError::NotAComplex { .. } => CliError::NotAComplex(e.to_string()),
            HomologyError::Diagram(d) => d.into(),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Homology(h) => h.into(),
            MoveError::Diagram(d) => d.into(),
            MoveError::Sl1(_) => CliError::Window(e.to_string()),
            MoveError::NotSingular(_) | MoveError::BadSite { .. } => CliError::Move(e.to_string()),
        }
    }
}
