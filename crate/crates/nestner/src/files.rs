//! JSON weight and gold files.
//!
//! Weight file:
//!
//! ```text
//! {"n": 6, "labels": ["PER", "GPE"], "default": -1,
//!  "entries": [{"type": "PER", "start": 0, "end": 1, "weight": 1.0}]}
//! ```
//!
//! `default` (0 when absent) applies to every mention without an entry. A
//! weight may be the string `"-inf"` to forbid a mention. `n` may be left out
//! when the caller supplies the length; an empty document is the same as `{}`.
//!
//! Gold file: `{"mentions": [{"type": "PER", "start": 0, "end": 1}]}`. Extra
//! keys are ignored, so decoder output can be fed back as gold.

use nestner_core::{Analysis, LabelSet, Mention, WeightTable};
use serde::Deserialize;

use crate::{Error, Result};

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    n: Option<usize>,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    default: Weight,
    #[serde(default)]
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    #[serde(rename = "type")]
    label: String,
    start: usize,
    end: usize,
    weight: Weight,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Weight {
    Number(f64),
    Named(String),
}

impl Default for Weight {
    fn default() -> Self {
        Weight::Number(0.0)
    }
}

impl Weight {
    fn value(&self) -> Result<f64> {
        match self {
            Weight::Number(x) => Ok(*x),
            Weight::Named(s) if s == "-inf" || s == "-Infinity" => Ok(f64::NEG_INFINITY),
            Weight::Named(s) => Err(Error::Invalid(format!("weight must be a number or \"-inf\", got {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
struct RawGold {
    mentions: Vec<RawMention>,
}

#[derive(Deserialize)]
struct RawMention {
    #[serde(rename = "type")]
    label: String,
    start: usize,
    end: usize,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Parse { line: source.line(), source })
}

fn resolve(labels: &LabelSet, name: &str) -> Result<usize> {
    labels
        .index_of(name)
        .ok_or_else(|| nestner_core::Error::UndefinedLabel(name.to_owned()).into())
}

/// Parses a weight file. `length` fills in a missing `"n"` and must agree with
/// it when both are given.
pub fn read_weights(text: &str, length: Option<usize>) -> Result<WeightTable> {
    let raw: RawWeights = if text.trim().is_empty() { RawWeights::default() } else { parse(text)? };
    let n = match (raw.n, length) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Invalid(format!("weight file has n = {a} but --length is {b}")))
        }
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => return Err(Error::Invalid("sentence length unknown: give \"n\" or --length".into())),
    };
    let labels = LabelSet::new(raw.labels)?;
    let mut table = WeightTable::filled(labels, n, raw.default.value()?)?;
    for e in &raw.entries {
        let mention = Mention::new(resolve(table.labels(), &e.label)?, e.start, e.end);
        table.set(mention, e.weight.value()?)?;
    }
    Ok(table)
}

/// Parses a gold file against the labels and length of a weight table.
pub fn read_gold(text: &str, weights: &WeightTable) -> Result<Analysis> {
    let raw: RawGold = parse(text)?;
    raw.mentions
        .iter()
        .map(|m| {
            let mention = Mention::new(resolve(weights.labels(), &m.label)?, m.start, m.end);
            if !mention.fits(weights.n()) {
                return Err(nestner_core::Error::MentionOutOfRange { mention, n: weights.n() }.into());
            }
            Ok(mention)
        })
        .collect()
}
