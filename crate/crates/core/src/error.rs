use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed operation table: entry {a}▷{b} = {value} is outside 0..{size}")]
    MalformedTable {
        a: usize,
        b: usize,
        value: usize,
        size: usize,
    },

    #[error("quandle {0} has no finite-field structure; use the propagation solver")]
    UnsupportedQuandle(String),

    #[error("gauss code parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unpaired crossing labels: {labels:?}")]
    Unpaired { labels: Vec<u32> },

    #[error("crossing label {label} appears twice with the same sign")]
    DuplicateSign { label: u32 },

    #[error("catalog line {line}: {message}")]
    CatalogLine { line: usize, message: String },

    #[error("knot {name}: {source}")]
    Knot {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("reference matrix: {0}")]
    ReferenceFormat(String),

    #[error("counting failed for knot {knot}, quandle {quandle}: {message}")]
    Solver {
        knot: String,
        quandle: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
