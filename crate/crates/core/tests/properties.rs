//! Randomised invariants of the chart algorithms.

mod common;

use common::random_weights;
use nestner_core::{
    children_of, inside, log_partition, map_inference, marginals, nll_loss, validate_analysis,
    viterbi_decode, Algorithm, Analysis, LabelSet, LogReal, Mention, SearchSpace, WeightTable,
};
use proptest::prelude::*;

fn algorithm() -> impl Strategy<Value = Algorithm> {
    prop::sample::select(Algorithm::ALL.to_vec())
}

fn random_analysis(n: usize, k: usize) -> impl Strategy<Value = Analysis> {
    prop::collection::vec((0..k, 0..n, 1..=n), 0..8).prop_map(move |raw| {
        raw.into_iter()
            .map(|(t, i, len)| {
                let i = i.min(n - 1);
                Mention::new(t, i, (i + len).min(n))
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn marginals_are_monotone_in_own_weight(
        alg in algorithm(), n in 1usize..7, k in 1usize..3, seed in any::<u64>(),
        pick in any::<prop::sample::Index>(), delta in 0.01f64..3.0,
    ) {
        let w = random_weights(n, k, seed, false);
        let m = w.mentions().nth(pick.index(w.mentions().count())).unwrap();
        let before = marginals(alg, &w).get(m).unwrap();
        let mut raised = w.clone();
        raised.set(m, w.get(m).unwrap() + delta).unwrap();
        let after = marginals(alg, &raised).get(m).unwrap();
        prop_assert!(after >= before - 1e-12, "{before} -> {after}");
    }

    #[test]
    fn marginals_are_the_gradient_of_log_partition(
        alg in algorithm(), n in 1usize..7, k in 1usize..3, seed in any::<u64>(),
    ) {
        let w = random_weights(n, k, seed, false);
        let mu = marginals(alg, &w);
        let h = 1e-5;
        for m in w.mentions() {
            let shifted = |d: f64| {
                let mut v = w.clone();
                v.set(m, w.get(m).unwrap() + d).unwrap();
                log_partition(alg, &v)
            };
            let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
            let p = mu.get(m).unwrap();
            prop_assert!((fd - p).abs() <= 1e-4 * p.abs().max(1e-3), "{m}: {fd} vs {p}");
        }
    }

    #[test]
    fn inference_is_deterministic(alg in algorithm(), n in 0usize..9, k in 1usize..4, seed in any::<u64>()) {
        let w = random_weights(n, k, seed, true);
        prop_assert!(inside::<LogReal>(alg, &w) == inside::<LogReal>(alg, &w));
        let a = viterbi_decode(alg, &w);
        let b = viterbi_decode(alg, &w);
        prop_assert_eq!(a.score.to_bits(), b.score.to_bits());
        prop_assert_eq!(a.analysis, b.analysis);
        prop_assert_eq!(a.trace, b.trace);
        let ma: Vec<u64> = marginals(alg, &w).iter().map(|(_, p)| p.to_bits()).collect();
        let mb: Vec<u64> = marginals(alg, &w).iter().map(|(_, p)| p.to_bits()).collect();
        prop_assert_eq!(ma, mb);
    }

    #[test]
    fn restricted_equals_full_nesting_up_to_three_words(n in 0usize..4, k in 1usize..4, seed in any::<u64>()) {
        let w = random_weights(n, k, seed, true);
        let zq = log_partition(Algorithm::QuadNested, &w);
        let zc = log_partition(Algorithm::CykNested, &w);
        prop_assert!(zq == zc || (zq - zc).abs() <= 1e-12 * zq.abs().max(1.0));
        prop_assert_eq!(map_inference(Algorithm::QuadNested, &w), map_inference(Algorithm::CykNested, &w));
    }

    #[test]
    fn validity_is_nested_across_spaces(a in (1usize..9, 1usize..3).prop_flat_map(|(n, k)| random_analysis(n, k))) {
        let n = a.iter().map(|m| m.right).max().unwrap_or(0);
        let ok = SearchSpace::ALL.map(|s| validate_analysis(&a, n, s).unwrap().is_valid());
        prop_assert!(!ok[0] || ok[1]);
        prop_assert!(!ok[1] || ok[2]);
        for (s, valid) in SearchSpace::ALL.into_iter().zip(ok) {
            prop_assert_eq!(valid, s.admits(a.mentions()));
        }
    }

    #[test]
    fn children_partition_the_inner_mentions(a in (1usize..10, 1usize..3).prop_flat_map(|(n, k)| random_analysis(n, k))) {
        for &parent in a.iter() {
            let kids = children_of(parent, &a).unwrap();
            for (x, c) in kids.iter().enumerate() {
                prop_assert!(c.is_inside(parent));
                for d in &kids[x + 1..] {
                    prop_assert!(!c.is_inside(*d) && !d.is_inside(*c));
                }
            }
            for m in a.iter().filter(|m| m.is_inside(parent)) {
                prop_assert!(kids.iter().any(|c| c == m || m.is_inside(*c)), "{m} is not covered");
            }
        }
    }

    #[test]
    fn loss_is_nonnegative_and_zero_only_for_certain_gold(alg in algorithm(), n in 1usize..7, seed in any::<u64>()) {
        let w = random_weights(n, 2, seed, false);
        let (_, best) = map_inference(alg, &w);
        let loss = nll_loss(alg, &w, &best).unwrap();
        prop_assert!(loss >= -1e-12);
        prop_assert!((loss - (log_partition(alg, &w) - w.score(&best).unwrap())).abs() < 1e-9);
    }
}

/// Chains of `depth` mentions, each directly inside the previous one, in the
/// three shapes the nested parsers must handle: shared right border, shared
/// left border and centre embedding.
fn chains(depth: usize) -> [(usize, Analysis); 3] {
    let right = 2 * depth - 1;
    let shared_right = (0..depth).map(|d| Mention::new(0, 2 * d, right)).collect();
    let shared_left = (0..depth).map(|d| Mention::new(0, 0, right - 2 * d)).collect();
    let centre_n = 2 * depth + 1;
    let centre = (0..depth).map(|d| Mention::new(0, d, centre_n - d)).collect();
    [(right, shared_right), (right, shared_left), (centre_n, centre)]
}

#[test]
fn deep_recursion_is_recovered() {
    let labels = LabelSet::new(["X"]).unwrap();
    for depth in 1..=20 {
        for (n, gold) in chains(depth) {
            let w = WeightTable::indicator(labels.clone(), n, &gold, 1.0, -1.0).unwrap();
            for alg in [Algorithm::CykNested, Algorithm::QuadNested] {
                let d = viterbi_decode(alg, &w);
                assert_eq!(d.analysis, gold, "{alg} depth={depth} n={n}");
                assert_eq!(d.score, depth as f64);
            }
        }
    }
}
