//! File formats, benchmarking and the command-line front end for
//! [`nestner_core`].
//!
//! The core crate is `no_std` and knows nothing about files; this crate adds
//! the line-delimited corpus reader, the JSON weight and gold files, and the
//! timing harness used to compare the parsers on long sentences.

pub mod bench;
pub mod corpus;
mod error;
pub mod files;
pub mod output;

pub use error::Error;
pub use nestner_core as core;

/// Result alias for this crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
