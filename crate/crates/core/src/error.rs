use alloc::string::String;

use crate::mention::Mention;
use crate::space::ValidityReport;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A label occurs twice in a label set.
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    /// Labels must be non-empty strings.
    #[error("empty label")]
    EmptyLabel,
    /// Labels may not collide with the item-kind markers.
    #[error("label `{0}` is a reserved item marker")]
    ReservedLabel(String),
    /// A label index does not exist in the label set.
    #[error("label index {index} out of range for {count} labels")]
    UnknownLabel {
        /// Offending index.
        index: usize,
        /// Size of the label set.
        count: usize,
    },
    /// A label name is not in the label set.
    #[error("undefined label `{0}`")]
    UndefinedLabel(String),
    /// A mention does not fit the sentence.
    #[error("mention {mention} is out of range for a sentence of {n} words")]
    MentionOutOfRange {
        /// Offending mention.
        mention: Mention,
        /// Sentence length.
        n: usize,
    },
    /// Weights must be finite or negative infinity.
    #[error("weight {value} for mention {mention} is not finite or -inf")]
    InvalidWeight {
        /// Mention the weight was assigned to.
        mention: Mention,
        /// Rejected value.
        value: f64,
    },
    /// `children_of` was asked about a mention outside the analysis.
    #[error("mention {0} is not part of the analysis")]
    MentionNotInAnalysis(Mention),
    /// A gold analysis lies outside the algorithm's search space.
    #[error("gold analysis is not valid in the search space: {0}")]
    InvalidGold(ValidityReport),
    /// The derivation count does not fit in 64 bits.
    #[error("analysis count overflows u64")]
    CountOverflow,
    /// NaN or +inf reached a log-space routine.
    #[error("value {0} is outside the log-space domain")]
    NumericDomain(f64),
    /// Exhaustive enumeration was requested for too many candidate mentions.
    #[error("{candidates} candidate mentions exceed the enumeration limit of {limit}")]
    InstanceTooLarge {
        /// Number of candidate mentions.
        candidates: usize,
        /// Configured limit.
        limit: usize,
    },
    /// A chart was combined with an algorithm or weight table it was not built from.
    #[error("chart does not match the algorithm or weights: {0}")]
    ChartMismatch(&'static str),
    /// Entity span invalid in a corpus record.
    #[error("sentence {sentence}: entity ({start}, {end}) out of range for {tokens} tokens")]
    EntityOutOfRange {
        /// Zero-based sentence index.
        sentence: usize,
        /// Entity start.
        start: usize,
        /// Entity end.
        end: usize,
        /// Token count.
        tokens: usize,
    },
}
