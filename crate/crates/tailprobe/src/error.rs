use std::path::PathBuf;

/// Errors from file handling, parsing and the core library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A text line that is not a decimal literal.
    #[error("line {line}: cannot parse {text:?} as a number")]
    Parse {
        /// 1-based line number.
        line: usize,
        /// Offending text, trimmed.
        text: String,
    },
    /// A raw file whose length is not a multiple of 8.
    #[error("raw f64 input has {len} bytes; trailing bytes start at offset {offset}")]
    RawLength {
        /// Total byte count.
        len: usize,
        /// Offset of the incomplete value.
        offset: usize,
    },
    /// A negative or non-finite sample.
    #[error("{location}: sample {value} is outside [0, inf)")]
    SampleDomain {
        /// `line N` or `byte offset N`.
        location: String,
        /// The offending value.
        value: f64,
    },
    /// Bad option values that clap cannot catch.
    #[error("{0}")]
    Usage(String),
    /// Filesystem failure.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Writing to an output stream failed.
    #[error(transparent)]
    Stream(#[from] std::io::Error),
    /// JSON encoding or decoding.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    /// Error from the core library.
    #[error(transparent)]
    Core(#[from] tailprobe_core::Error),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
