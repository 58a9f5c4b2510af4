use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::label::LabelSet;
use crate::mention::{Analysis, Mention};
use crate::triangle::{triangle_index, triangle_len};

/// Mention weights `w` for one sentence, stored span by span with the labels
/// of a span adjacent.
///
/// Every entry is finite or `-inf`; `-inf` forbids the mention.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    n: usize,
    labels: LabelSet,
    weights: Vec<f64>,
}

/// Offset of `⟨label, left, right⟩` in span-major storage, shared by weight
/// tables, chart mention rows and marginal tables.
#[inline(always)]
pub(crate) const fn mention_offset(n: usize, num_labels: usize, label: usize, left: usize, right: usize) -> usize {
    triangle_index(n, left, right) * num_labels + label
}

fn check_weight(mention: Mention, value: f64) -> Result<f64, Error> {
    if value.is_nan() || value == f64::INFINITY {
        Err(Error::InvalidWeight { mention, value })
    } else {
        Ok(value)
    }
}

impl WeightTable {
    /// Every mention gets `fill`.
    pub fn filled(labels: LabelSet, n: usize, fill: f64) -> Result<Self, Error> {
        check_weight(Mention::new(0, 0, n.max(1)), fill)?;
        let weights = vec![fill; labels.len() * triangle_len(n)];
        Ok(WeightTable { n, labels, weights })
    }

    /// Weights computed per mention.
    pub fn from_fn(
        labels: LabelSet,
        n: usize,
        mut weight: impl FnMut(Mention) -> f64,
    ) -> Result<Self, Error> {
        let mut table = WeightTable::filled(labels, n, 0.0)?;
        for t in 0..table.labels.len() {
            for i in 0..n {
                for j in i + 1..=n {
                    let m = Mention::new(t, i, j);
                    table.set(m, weight(m))?;
                }
            }
        }
        Ok(table)
    }

    /// `positive` for members of `gold`, `negative` for everything else.
    pub fn indicator(
        labels: LabelSet,
        n: usize,
        gold: &Analysis,
        positive: f64,
        negative: f64,
    ) -> Result<Self, Error> {
        let mut table = WeightTable::filled(labels, n, negative)?;
        for m in gold {
            table.set(*m, positive)?;
        }
        Ok(table)
    }

    /// Overwrites the weight of `mention`.
    pub fn set(&mut self, mention: Mention, value: f64) -> Result<(), Error> {
        let idx = self.index(mention)?;
        self.weights[idx] = check_weight(mention, value)?;
        Ok(())
    }

    /// Weight of `mention`.
    pub fn get(&self, mention: Mention) -> Result<f64, Error> {
        self.index(mention).map(|idx| self.weights[idx])
    }

    /// Weight of `⟨label, left, right⟩` without range checks beyond debug assertions.
    #[inline(always)]
    pub fn weight(&self, label: usize, left: usize, right: usize) -> f64 {
        debug_assert!(label < self.labels.len() && left < right && right <= self.n);
        self.weights[self.offset(label, left, right)]
    }

    /// Sentence length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mention types.
    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    /// Number of mention types.
    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    /// Sum of the weights of `analysis`, i.e. `wᵀy`.
    pub fn score(&self, analysis: &Analysis) -> Result<f64, Error> {
        analysis.iter().map(|m| self.get(*m)).sum()
    }

    /// Every candidate mention in canonical `(left, right, label)` order.
    pub fn mentions(&self) -> impl Iterator<Item = Mention> + '_ {
        let (n, k) = (self.n, self.labels.len());
        (0..n).flat_map(move |i| {
            (i + 1..=n).flat_map(move |j| (0..k).map(move |t| Mention::new(t, i, j)))
        })
    }

    #[inline(always)]
    pub(crate) fn offset(&self, label: usize, left: usize, right: usize) -> usize {
        mention_offset(self.n, self.labels.len(), label, left, right)
    }

    /// Raw storage in [`offset`](Self::offset) order; cells with `left == right` are padding.
    #[inline]
    pub(crate) fn raw(&self) -> &[f64] {
        &self.weights
    }

    fn index(&self, mention: Mention) -> Result<usize, Error> {
        if mention.label >= self.labels.len() {
            return Err(Error::UnknownLabel { index: mention.label, count: self.labels.len() });
        }
        if !mention.fits(self.n) {
            return Err(Error::MentionOutOfRange { mention, n: self.n });
        }
        Ok(self.offset(mention.label, mention.left, mention.right))
    }
}
