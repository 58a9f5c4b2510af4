#![allow(dead_code)]

use nestner_core::{Analysis, LabelSet, Mention, WeightTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform weights in `[-2, 2]`; with `forbid`, roughly one mention in ten is `-inf`.
pub fn random_weights(n: usize, num_labels: usize, seed: u64, forbid: bool) -> WeightTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    WeightTable::from_fn(LabelSet::synthetic(num_labels), n, |_| {
        if forbid && rng.random_bool(0.1) {
            f64::NEG_INFINITY
        } else {
            rng.random_range(-2.0..2.0)
        }
    })
    .unwrap()
}

pub fn analysis(mentions: &[(usize, usize, usize)]) -> Analysis {
    mentions.iter().map(|&(t, i, j)| Mention::new(t, i, j)).collect()
}

pub fn indicator(labels: &LabelSet, n: usize, gold: &Analysis) -> WeightTable {
    WeightTable::indicator(labels.clone(), n, gold, 1.0, -1.0).unwrap()
}
