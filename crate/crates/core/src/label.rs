use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;

/// Item-kind markers that can never be used as mention types.
pub const RESERVED_MARKERS: [&str; 4] = ["→", "↦", "↔", "↤"];

/// Ordered set of mention types.
///
/// Labels are addressed by their position. An empty set is accepted and
/// describes sentences where no mention can exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LabelSet {
    labels: Vec<String>,
}

impl LabelSet {
    /// Builds a label set, rejecting duplicates, empty strings and reserved markers.
    pub fn new<I, S>(labels: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<String> = Vec::new();
        for label in labels {
            let label = label.as_ref();
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if RESERVED_MARKERS.contains(&label) {
                return Err(Error::ReservedLabel(label.to_string()));
            }
            if out.iter().any(|l| l == label) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            out.push(label.to_string());
        }
        Ok(LabelSet { labels: out })
    }

    /// `count` synthetic labels named `T0`, `T1`, ...
    pub fn synthetic(count: usize) -> Self {
        LabelSet {
            labels: (0..count).map(|t| alloc::format!("T{t}")).collect(),
        }
    }

    /// Number of labels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// True when there are no labels.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Name of label `index`.
    pub fn name(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    /// Position of `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Label names in order.
    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }
}
