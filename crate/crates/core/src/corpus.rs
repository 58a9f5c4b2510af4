//! Gold corpora and the maximum-recall (coverage) analysis of a search space.

use alloc::string::String;
use alloc::vec::Vec;

use crate::deduction::{viterbi_decode, Algorithm};
use crate::error::Error;
use crate::label::LabelSet;
use crate::mention::{Analysis, Mention};
use crate::space::SearchSpace;
use crate::weights::WeightTable;

/// A typed gold span over token fenceposts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entity {
    /// Mention type.
    pub label: String,
    /// Left fencepost.
    pub start: usize,
    /// Right fencepost (exclusive).
    pub end: usize,
}

/// One tokenized sentence with its gold entities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    tokens: Vec<String>,
    entities: Vec<Entity>,
}

impl SentenceRecord {
    /// Validates `0 <= start < end <= tokens.len()` for every entity;
    /// `index` only labels the error.
    pub fn new(tokens: Vec<String>, entities: Vec<Entity>, index: usize) -> Result<Self, Error> {
        if let Some(e) = entities.iter().find(|e| e.start >= e.end || e.end > tokens.len()) {
            return Err(Error::EntityOutOfRange {
                sentence: index,
                start: e.start,
                end: e.end,
                tokens: tokens.len(),
            });
        }
        Ok(SentenceRecord { tokens, entities })
    }

    /// Tokens.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Gold entities as listed.
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    /// Sentence length in words.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// True for an empty sentence.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Gold entities as mentions over `labels`.
    pub fn gold(&self, labels: &LabelSet) -> Result<Analysis, Error> {
        self.entities
            .iter()
            .map(|e| {
                let label = labels
                    .index_of(&e.label)
                    .ok_or_else(|| Error::UndefinedLabel(e.label.clone()))?;
                Ok(Mention::new(label, e.start, e.end))
            })
            .collect()
    }

    fn has_same_span_pair(&self) -> bool {
        pairs(&self.entities).any(|(a, b)| a.start == b.start && a.end == b.end)
    }

    fn has_partial_overlap(&self) -> bool {
        pairs(&self.entities).any(|(a, b)| {
            let crosses = |x: &Entity, y: &Entity| x.start < y.start && y.start < x.end && x.end < y.end;
            crosses(a, b) || crosses(b, a)
        })
    }
}

fn pairs<T>(items: &[T]) -> impl Iterator<Item = (&T, &T)> {
    items
        .iter()
        .enumerate()
        .flat_map(move |(x, a)| items[x + 1..].iter().map(move |b| (a, b)))
}

/// Entity types in order of first appearance.
pub fn label_vocabulary(corpus: &[SentenceRecord]) -> Result<LabelSet, Error> {
    let mut names: Vec<&str> = Vec::new();
    for e in corpus.iter().flat_map(|r| r.entities()) {
        if !names.contains(&e.label.as_str()) {
            names.push(&e.label);
        }
    }
    LabelSet::new(names)
}

/// Largest subset of the gold mentions that is valid in `space`.
///
/// Decodes with +1 on gold mentions and -1 elsewhere: any non-gold mention
/// only lowers the score, so the optimum is a maximum valid gold subset.
pub fn recoverable_mentions(
    record: &SentenceRecord,
    labels: &LabelSet,
    space: SearchSpace,
) -> Result<Analysis, Error> {
    let gold = record.gold(labels)?;
    let weights = WeightTable::indicator(labels.clone(), record.len(), &gold, 1.0, -1.0)?;
    Ok(viterbi_decode(Algorithm::for_space(space), &weights).analysis)
}

/// Corpus-wide maximum recall of one search space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    /// Space analysed.
    pub space: SearchSpace,
    /// Number of sentences.
    pub sentences: usize,
    /// Gold entities as listed (exact duplicates included).
    pub total_gold: usize,
    /// Gold mentions kept by the best valid analyses.
    pub recoverable: usize,
    /// Sentences with two entities over the same span.
    pub same_span_sentences: usize,
    /// Sentences with two partially overlapping entities.
    pub partial_overlap_sentences: usize,
}

impl CoverageReport {
    /// `recoverable / total_gold`, or 1 for a corpus without entities.
    pub fn max_recall(&self) -> f64 {
        if self.total_gold == 0 {
            1.0
        } else {
            self.recoverable as f64 / self.total_gold as f64
        }
    }
}

/// Maximum achievable recall of `space` over `corpus`.
pub fn max_recall(corpus: &[SentenceRecord], space: SearchSpace) -> Result<CoverageReport, Error> {
    let labels = label_vocabulary(corpus)?;
    let mut report = CoverageReport {
        space,
        sentences: corpus.len(),
        total_gold: 0,
        recoverable: 0,
        same_span_sentences: 0,
        partial_overlap_sentences: 0,
    };
    for record in corpus {
        report.total_gold += record.entities().len();
        report.recoverable += recoverable_mentions(record, &labels, space)?.len();
        report.same_span_sentences += usize::from(record.has_same_span_pair());
        report.partial_overlap_sentences += usize::from(record.has_partial_overlap());
    }
    Ok(report)
}
