use thiserror::Error;

/// Errors raised while reading inputs or running benchmarks.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] nestner_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A corpus line or JSON document that does not parse.
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    /// Well-formed input that is inconsistent (sentence length mismatch, unknown label, ...).
    #[error("{0}")]
    Invalid(String),

    #[error("repetitions must be at least 3, got {0}")]
    TooFewRepetitions(usize),

    #[error("slope fit for {algorithm} needs at least 3 distinct lengths, got {found}")]
    TooFewLengths { algorithm: String, found: usize },
}
