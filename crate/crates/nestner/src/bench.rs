//! Decoding-time measurements as a function of sentence length.
//!
//! Only the [`map_inference`] call is timed: weights are generated before the
//! clock starts and results are formatted after it stops. Each
//! (algorithm, length) pair gets one discarded warm-up run and reports the
//! median of the timed repetitions. Runs are single-threaded.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use nestner_core::{map_inference, Algorithm, LabelSet, WeightTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// What to measure.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    lengths: Vec<usize>,
    repetitions: usize,
    num_labels: usize,
    seed: u64,
    algorithms: Vec<Algorithm>,
}

impl BenchConfig {
    /// Lengths are sorted and deduplicated; `repetitions` must be at least 3.
    pub fn new(
        mut lengths: Vec<usize>,
        repetitions: usize,
        num_labels: usize,
        seed: u64,
        algorithms: Vec<Algorithm>,
    ) -> Result<Self> {
        if repetitions < 3 {
            return Err(Error::TooFewRepetitions(repetitions));
        }
        lengths.sort_unstable();
        lengths.dedup();
        Ok(BenchConfig { lengths, repetitions, num_labels, seed, algorithms })
    }

    /// Sentence lengths, ascending.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Timed runs per point.
    pub fn repetitions(&self) -> usize {
        self.repetitions
    }

    /// Number of mention types.
    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// Algorithms in run order.
    pub fn algorithms(&self) -> &[Algorithm] {
        &self.algorithms
    }
}

/// One measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    /// Median wall-clock seconds of one decode.
    pub seconds: f64,
}

/// Weights uniform in `[-1, 1]`. Every algorithm sees the same table for a
/// given seed and length.
pub fn bench_weights(n: usize, num_labels: usize, seed: u64) -> WeightTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    WeightTable::from_fn(LabelSet::synthetic(num_labels), n, |_| rng.random_range(-1.0..=1.0))
        .expect("finite weights")
}

/// Median seconds of `reps` timed decodes after one warm-up.
pub fn time_decode(algorithm: Algorithm, weights: &WeightTable, reps: usize) -> f64 {
    black_box(map_inference(algorithm, black_box(weights)));
    let mut times: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            let out = map_inference(algorithm, black_box(weights));
            let elapsed = start.elapsed().as_secs_f64();
            black_box(out);
            elapsed
        })
        .collect();
    times.sort_by(f64::total_cmp);
    median_of_sorted(&times)
}

fn median_of_sorted(xs: &[f64]) -> f64 {
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

/// Runs every (algorithm, length) pair in config order.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &algorithm in &config.algorithms {
        for &n in &config.lengths {
            let weights = bench_weights(n, config.num_labels, config.seed);
            let seconds = time_decode(algorithm, &weights, config.repetitions);
            rows.push(BenchRow { algorithm, n, seconds });
        }
    }
    rows
}

/// Header plus one `algorithm,n,seconds_per_sentence` line per row.
pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(out, "algorithm,n,seconds_per_sentence")?;
    for row in rows {
        writeln!(out, "{},{},{}", row.algorithm.name(), row.n, row.seconds)?;
    }
    Ok(())
}

/// Least-squares slope of `ln(seconds)` against `ln(n)` over the rows of
/// `algorithm`.
pub fn fit_loglog_slope(rows: &[BenchRow], algorithm: Algorithm) -> Result<f64> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.algorithm == algorithm && r.n > 0 && r.seconds > 0.0)
        .map(|r| ((r.n as f64).ln(), r.seconds.ln()))
        .collect();
    let mut distinct: Vec<u64> = points.iter().map(|p| p.0.to_bits()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::TooFewLengths { algorithm: algorithm.name().into(), found: distinct.len() });
    }
    let count = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / count;
    let my = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(power: i32) -> Vec<BenchRow> {
        [16, 32, 64, 128]
            .map(|n| BenchRow { algorithm: Algorithm::QuadNested, n, seconds: 3e-9 * (n as f64).powi(power) })
            .to_vec()
    }

    #[test]
    fn slope_of_power_laws() {
        assert!((fit_loglog_slope(&synthetic(2), Algorithm::QuadNested).unwrap() - 2.0).abs() < 1e-9);
        assert!((fit_loglog_slope(&synthetic(3), Algorithm::QuadNested).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn slope_needs_three_lengths() {
        let rows = &synthetic(2)[..2];
        assert!(matches!(
            fit_loglog_slope(rows, Algorithm::QuadNested),
            Err(Error::TooFewLengths { found: 2, .. })
        ));
        assert!(fit_loglog_slope(&synthetic(2), Algorithm::CykNested).is_err());
    }

    #[test]
    fn config_sorts_and_checks() {
        let c = BenchConfig::new(vec![8, 2, 4, 2], 3, 7, 0, Algorithm::ALL.to_vec()).unwrap();
        assert_eq!(c.lengths(), [2, 4, 8]);
        assert!(matches!(
            BenchConfig::new(vec![2], 2, 7, 0, vec![]),
            Err(Error::TooFewRepetitions(2))
        ));
    }

    #[test]
    fn table_shape_is_fixed() {
        let c = BenchConfig::new(vec![3, 1, 2], 3, 2, 9, vec![Algorithm::SemiMarkov, Algorithm::CykNested]).unwrap();
        let rows = run_bench(&c);
        let keys: Vec<(Algorithm, usize)> = rows.iter().map(|r| (r.algorithm, r.n)).collect();
        assert_eq!(
            keys,
            [
                (Algorithm::SemiMarkov, 1),
                (Algorithm::SemiMarkov, 2),
                (Algorithm::SemiMarkov, 3),
                (Algorithm::CykNested, 1),
                (Algorithm::CykNested, 2),
                (Algorithm::CykNested, 3)
            ]
        );
        let mut csv = Vec::new();
        write_csv(&rows, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("algorithm,n,seconds_per_sentence\nsemi-markov,1,"));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn weights_are_shared_and_bounded() {
        let a = bench_weights(5, 3, 1);
        assert_eq!(a, bench_weights(5, 3, 1));
        assert!(a.mentions().all(|m| a.get(m).unwrap().abs() <= 1.0));
    }
}
