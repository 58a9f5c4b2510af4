//! Ground truth by exhaustive enumeration of a search space.
//!
//! Analyses are enumerated as bitmasks over the candidate mentions with
//! pairwise pruning, and every leaf is re-checked with the full validity
//! predicate. Nothing here touches the chart code.

use alloc::vec::Vec;

use crate::error::Error;
use crate::inference::MarginalTable;
use crate::label::LabelSet;
use crate::mention::{Analysis, Mention};
use crate::semiring::log_sum_exp;
use crate::space::SearchSpace;
use crate::weights::WeightTable;

/// Candidate-mention limit for bitmask enumeration.
pub const MAX_ENUMERATION_CANDIDATES: usize = 42;

/// Candidate-mention limit for [`enumerate_analyses`], which materializes
/// every analysis.
pub const MAX_MATERIALIZED_CANDIDATES: usize = 24;

/// Every analysis of a search space for one sentence shape.
#[derive(Debug, Clone)]
pub struct Enumeration {
    space: SearchSpace,
    n: usize,
    num_labels: usize,
    candidates: Vec<Mention>,
    masks: Vec<u64>,
}

impl Enumeration {
    /// Enumerates `space` for `n` words and `num_labels` types.
    pub fn new(space: SearchSpace, n: usize, num_labels: usize) -> Result<Self, Error> {
        Self::with_limit(space, n, num_labels, MAX_ENUMERATION_CANDIDATES)
    }

    fn with_limit(space: SearchSpace, n: usize, num_labels: usize, limit: usize) -> Result<Self, Error> {
        let candidates: Vec<Mention> = (0..n)
            .flat_map(|i| (i + 1..=n).flat_map(move |j| (0..num_labels).map(move |t| Mention::new(t, i, j))))
            .collect();
        if candidates.len() > limit {
            return Err(Error::InstanceTooLarge { candidates: candidates.len(), limit });
        }
        let mut search = Search {
            space,
            candidates: &candidates,
            chosen: Vec::new(),
            mask: 0,
            masks: Vec::new(),
        };
        search.run(0);
        let masks = search.masks;
        Ok(Enumeration { space, n, num_labels, candidates, masks })
    }

    /// The enumerated space.
    pub fn space(&self) -> SearchSpace {
        self.space
    }

    /// Number of analyses.
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    /// Never true: the empty analysis always exists.
    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Candidate mentions; bit `b` of a mask selects `candidates()[b]`.
    pub fn candidates(&self) -> &[Mention] {
        &self.candidates
    }

    /// Analyses as bitmasks, in enumeration order.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Analyses in enumeration order.
    pub fn analyses(&self) -> impl Iterator<Item = Analysis> + '_ {
        self.masks.iter().map(|&mask| self.decode(mask))
    }

    fn decode(&self, mask: u64) -> Analysis {
        bits(mask).map(|b| self.candidates[b]).collect()
    }

    /// All oracle quantities for one weight table.
    pub fn evaluate(&self, weights: &WeightTable) -> Result<OracleResult, Error> {
        if weights.n() != self.n || weights.num_labels() != self.num_labels {
            return Err(Error::ChartMismatch("weights do not match the enumerated sentence shape"));
        }
        let candidate_weights: Vec<f64> = self
            .candidates
            .iter()
            .map(|m| weights.weight(m.label, m.left, m.right))
            .collect();
        let scores: Vec<f64> = self
            .masks
            .iter()
            .map(|&mask| bits(mask).map(|b| candidate_weights[b]).sum())
            .collect();

        let log_partition = log_sum_exp(&scores)?;
        let mut best: Option<(f64, u64)> = None;
        let mut count = 0u64;
        let mut mass = alloc::vec![0.0f64; self.candidates.len()];
        for (&mask, &score) in self.masks.iter().zip(&scores) {
            if score == f64::NEG_INFINITY {
                continue;
            }
            count += 1;
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, mask));
            }
            let p = libm::exp(score - log_partition);
            for b in bits(mask) {
                mass[b] += p;
            }
        }
        let (map_score, map_mask) = best.expect("the empty analysis has score 0");

        let index_of = |m: Mention| {
            self.candidates
                .binary_search(&m)
                .expect("every in-range mention is a candidate")
        };
        let marginals = MarginalTable::from_fn(self.n, self.num_labels, log_partition, |m| mass[index_of(m)]);
        Ok(OracleResult {
            log_partition,
            map_score,
            map_analysis: self.decode(map_mask),
            marginals,
            count,
        })
    }
}

struct Search<'a> {
    space: SearchSpace,
    candidates: &'a [Mention],
    chosen: Vec<Mention>,
    mask: u64,
    masks: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, next: usize) {
        if next == self.candidates.len() {
            if self.space.admits(&self.chosen) {
                self.masks.push(self.mask);
            }
            return;
        }
        self.run(next + 1);
        let candidate = self.candidates[next];
        if self.chosen.iter().all(|c| self.space.pair_compatible(*c, candidate)) {
            self.chosen.push(candidate);
            self.mask |= 1 << next;
            self.run(next + 1);
            self.mask &= !(1 << next);
            self.chosen.pop();
        }
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

/// Reference values from direct summation and maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// `log Σ_y exp(wᵀy)`.
    pub log_partition: f64,
    /// `max_y wᵀy`.
    pub map_score: f64,
    /// First maximizer in enumeration order.
    pub map_analysis: Analysis,
    /// `Σ_{y ∋ m} p(y | w)` per mention.
    pub marginals: MarginalTable,
    /// Number of analyses with finite score.
    pub count: u64,
}

/// All analyses of `space`, materialized. Limited to
/// [`MAX_MATERIALIZED_CANDIDATES`] candidate mentions.
pub fn enumerate_analyses(space: SearchSpace, n: usize, num_labels: usize) -> Result<Vec<Analysis>, Error> {
    let enumeration = Enumeration::with_limit(space, n, num_labels, MAX_MATERIALIZED_CANDIDATES)?;
    Ok(enumeration.analyses().collect())
}

/// Oracle inference for one weight table.
pub fn oracle_inference(space: SearchSpace, weights: &WeightTable) -> Result<OracleResult, Error> {
    Enumeration::new(space, weights.n(), weights.num_labels())?.evaluate(weights)
}

/// Zero weights over synthetic labels, handy for counting.
pub fn uniform_weights(n: usize, num_labels: usize) -> WeightTable {
    WeightTable::filled(LabelSet::synthetic(num_labels), n, 0.0).expect("zero is a valid weight")
}
