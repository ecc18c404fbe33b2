use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    DomainMismatch { graph: usize, coloring: usize },

    #[error("color {color} of vertex {vertex} is outside the palette of size {palette}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        palette: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("gadget construction: {0}")]
    Construction(String),

    #[error("boundary coloring {0:?} has no proper extension")]
    NotExtendable(Vec<usize>),

    #[error("arity {0} outside the supported range 2..=6")]
    ArityRange(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::NotExtendable(_))
    }
}
