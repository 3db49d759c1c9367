use thiserror::Error;

/// Errors raised by graph, deck and reconstruction operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed arguments or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    /// A text file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The parameters fall outside the range where the algorithm can run.
    #[error("regime error: {0}")]
    Regime(String),

    /// Canonical forms are only computed for small graphs.
    #[error("unsupported size: graph has {n} vertices, limit is {limit}")]
    UnsupportedSize { n: usize, limit: usize },

    /// The reference card lacks the one-vertex-deleted histograms needed for the card partition.
    #[error(
        "reference card has {required} vertices above degree {threshold} but {available} sub-card histograms; rebuild the deck with sub-cards enabled"
    )]
    MissingSubcards {
        threshold: u64,
        required: u64,
        available: u64,
    },

    /// No degree in the middle window could be certified as absent.
    #[error("no zero-degree window in [{lo}, {hi}]")]
    NoWindow { lo: usize, hi: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
