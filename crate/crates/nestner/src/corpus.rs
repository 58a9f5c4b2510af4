//! Line-delimited corpus reader.
//!
//! One JSON object per line:
//!
//! ```text
//! {"tokens": ["He", "was", ...], "entities": [{"type": "PER", "start": 0, "end": 1}]}
//! ```
//!
//! Offsets are fenceposts: `start` is inclusive, `end` exclusive. Blank lines
//! are skipped.

use std::io::BufRead;

use nestner_core::corpus::{Entity, SentenceRecord};
use serde::Deserialize;

use crate::{Error, Result};

#[derive(Deserialize)]
struct RawRecord {
    tokens: Vec<String>,
    entities: Vec<RawEntity>,
}

#[derive(Deserialize)]
struct RawEntity {
    #[serde(rename = "type")]
    label: String,
    start: usize,
    end: usize,
}

/// Reads every record from `reader`.
///
/// Parse errors carry the 1-based line number; span errors carry the 0-based
/// record index.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<SentenceRecord>> {
    let mut records = Vec::new();
    for (number, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord =
            serde_json::from_str(&line).map_err(|source| Error::Parse { line: number + 1, source })?;
        let entities = raw
            .entities
            .into_iter()
            .map(|e| Entity { label: e.label, start: e.start, end: e.end })
            .collect();
        records.push(SentenceRecord::new(raw.tokens, entities, records.len())?);
    }
    Ok(records)
}
