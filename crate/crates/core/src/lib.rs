//! Exact chart parsers for span-based named-entity recognition.
//!
//! Three deduction systems share one semiring-generic chart engine:
//!
//! | Algorithm | Search space | Time |
//! |-----------|--------------|------|
//! | [`Algorithm::SemiMarkov`] | non-nested mentions | O(n²·\|T\|) |
//! | [`Algorithm::CykNested`] | nested mentions, no partial overlap | O(n³ + n²·\|T\|) |
//! | [`Algorithm::QuadNested`] | nested, at most one child longer than one word | O(n²·\|T\|) |
//!
//! Every analysis of the search space has exactly one derivation, so the same
//! charts yield MAP decoding ([`MaxTropical`]), the log-partition function and
//! mention marginals ([`LogReal`] plus an outside pass) and analysis counts
//! ([`Counting`]).
//!
//! ```
//! use nestner_core::{map_inference, Algorithm, LabelSet, Mention, WeightTable};
//!
//! let labels = LabelSet::new(["PER"]).unwrap();
//! let mut weights = WeightTable::filled(labels, 3, -1.0).unwrap();
//! weights.set(Mention::new(0, 0, 3), 2.0).unwrap();
//! weights.set(Mention::new(0, 1, 2), 1.0).unwrap();
//!
//! let (score, analysis) = map_inference(Algorithm::CykNested, &weights);
//! assert_eq!(score, 3.0);
//! assert_eq!(analysis.len(), 2);
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod corpus;
pub mod deduction;
mod error;
pub mod inference;
mod label;
mod mention;
pub mod oracle;
pub mod semiring;
mod space;
mod triangle;
mod weights;

pub use crate::deduction::{
    enumerate_rule_instances, inside, outside, viterbi_decode, Algorithm, Chart, Decoded,
    DerivationTrace, Item, Rule, TraceStep,
};
pub use crate::error::Error;
pub use crate::inference::{
    count_analyses, log_partition, map_inference, marginals, nll_loss, MarginalTable,
};
pub use crate::label::{LabelSet, RESERVED_MARKERS};
pub use crate::mention::{children_of, is_inside, Analysis, Mention, Span};
pub use crate::semiring::{log_sum_exp, Count, Counting, LogReal, MaxTropical, Semiring};
pub use crate::space::{validate_analysis, SearchSpace, ValidityReport, Violation};
pub use crate::weights::WeightTable;

/// Shorthand for results carrying [`Error`].
pub type Result<T, E = Error> = core::result::Result<T, E>;
