use hypfeuer_core::GeomError;
use thiserror::Error;

/// Anything wrong with what the user handed in. Exits with status 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot parse complex number {0:?}")]
    Complex(String),
    #[error("expected three comma-separated points, got {0}")]
    Arity(usize),
    #[error("{0}")]
    Geometry(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("invalid configuration document: {0}")]
    Document(String),
    #[error("{0}")]
    Setting(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<GeomError> for InputError {
    /// Keeps the variant name in front, e.g. `DegenerateTriangle: triangle is degenerate ...`.
    fn from(e: GeomError) -> Self {
        let debug = format!("{e:?}");
        let name = debug.split([' ', '(', '{']).next().unwrap_or_default().to_string();
        InputError::Geometry(format!("{name}: {e}"))
    }
}
