//! Inference entry points: MAP, log-partition, marginals, counts and the loss.

use alloc::vec::Vec;

use crate::deduction::{inside, outside, viterbi_decode, Algorithm, Item};
use crate::error::Error;
use crate::label::LabelSet;
use crate::mention::{Analysis, Mention};
use crate::semiring::{Counting, LogReal};
use crate::space::validate_analysis;
use crate::weights::WeightTable;

/// `log Z(w)` over the algorithm's search space.
pub fn log_partition(algorithm: Algorithm, weights: &WeightTable) -> f64 {
    inside::<LogReal>(algorithm, weights).goal()
}

/// Highest-scoring analysis and its score.
pub fn map_inference(algorithm: Algorithm, weights: &WeightTable) -> (f64, Analysis) {
    let decoded = viterbi_decode(algorithm, weights);
    (decoded.score, decoded.analysis)
}

/// Number of analyses of a sentence of `n` words with `num_labels` types.
pub fn count_analyses(algorithm: Algorithm, n: usize, num_labels: usize) -> Result<u64, Error> {
    let weights = WeightTable::filled(LabelSet::synthetic(num_labels), n, 0.0)?;
    count_supported(algorithm, &weights)
}

/// Number of analyses whose mentions all have finite weight.
pub fn count_supported(algorithm: Algorithm, weights: &WeightTable) -> Result<u64, Error> {
    inside::<Counting>(algorithm, weights).goal().exact()
}

/// `-wᵀy + log Z(w)` for a gold analysis inside the algorithm's search space.
pub fn nll_loss(algorithm: Algorithm, weights: &WeightTable, gold: &Analysis) -> Result<f64, Error> {
    let report = validate_analysis(gold, weights.n(), algorithm.search_space())?;
    if !report.is_valid() {
        return Err(Error::InvalidGold(report));
    }
    let gold_score = weights.score(gold)?;
    Ok(-gold_score + log_partition(algorithm, weights))
}

/// Posterior probability `p(y_m = 1 | w)` for every candidate mention.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalTable {
    n: usize,
    num_labels: usize,
    // Same layout as the weights; only i < j cells are used.
    probabilities: Vec<f64>,
    log_partition: f64,
}

impl MarginalTable {
    pub(crate) fn from_fn(
        n: usize,
        num_labels: usize,
        log_partition: f64,
        mut probability: impl FnMut(Mention) -> f64,
    ) -> Self {
        let template = WeightTable::filled(LabelSet::synthetic(num_labels), n, 0.0)
            .expect("zero is a valid weight");
        let mut probabilities = alloc::vec![0.0; num_labels * crate::triangle::triangle_len(n)];
        for m in template.mentions() {
            probabilities[template.offset(m.label, m.left, m.right)] = probability(m);
        }
        MarginalTable { n, num_labels, probabilities, log_partition }
    }

    /// Marginal of `mention`; `None` when out of range.
    pub fn get(&self, mention: Mention) -> Option<f64> {
        if mention.label >= self.num_labels || !mention.fits(self.n) {
            return None;
        }
        let idx = crate::weights::mention_offset(self.n, self.num_labels, mention.label, mention.left, mention.right);
        Some(self.probabilities[idx])
    }

    /// Every `(mention, probability)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Mention, f64)> + '_ {
        let (n, k) = (self.n, self.num_labels);
        (0..n)
            .flat_map(move |i| (i + 1..=n).flat_map(move |j| (0..k).map(move |t| Mention::new(t, i, j))))
            .map(move |m| (m, self.get(m).expect("in range")))
    }

    /// Expected number of mentions.
    pub fn expected_mentions(&self) -> f64 {
        self.iter().map(|(_, p)| p).sum()
    }

    /// `log Z(w)` computed alongside.
    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    /// Sentence length.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Mention marginals from one inside and one outside pass.
pub fn marginals(algorithm: Algorithm, weights: &WeightTable) -> MarginalTable {
    let ins = inside::<LogReal>(algorithm, weights);
    let out = outside(algorithm, weights, &ins).expect("chart built from the same weights");
    let log_z = ins.goal();
    MarginalTable::from_fn(weights.n(), weights.num_labels(), log_z, |m| {
        let w = weights.weight(m.label, m.left, m.right);
        if w == f64::NEG_INFINITY {
            return 0.0;
        }
        libm::exp(w + out.get(Item::Mention(m)) - log_z)
    })
}
