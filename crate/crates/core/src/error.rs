use thiserror::Error;

/// Errors produced while reading and analyzing diagrams.
///
/// `Internal` is reserved for consistency failures that indicate a bug in
/// this library (a violated theorem, a corrupt intermediate structure); it
/// is never a user-input problem and maps to a distinct process exit code
/// in the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid edge labels: {0}")]
    Labels(String),

    #[error("unresolvable orientation: {0}")]
    Orientation(String),

    #[error("diagram is disconnected (split link diagrams are rejected)")]
    Disconnected,

    #[error("diagram is not planar: {crossings} crossings yield {regions} regions, expected {}", crossings + 2)]
    NonPlanar { crossings: usize, regions: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug in the library rather than bad
    /// input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
