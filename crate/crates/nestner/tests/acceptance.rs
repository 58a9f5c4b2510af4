//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the report is always
//! printed.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use nestner::bench::{bench_weights, fit_loglog_slope, time_decode, BenchRow};
use nestner::core::corpus::{label_vocabulary, max_recall};
use nestner::core::deduction::enumerate_rule_instances;
use nestner::core::oracle::{uniform_weights, Enumeration};
use nestner::core::{
    count_analyses, inference::count_supported, log_partition, map_inference, marginals,
    validate_analysis, viterbi_decode, Algorithm, Analysis, DerivationTrace, Item, LabelSet, Mention,
    Rule, SearchSpace, WeightTable,
};
use nestner::corpus::read_corpus;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Tolerances.
const LOGZ_TOL: f64 = 1e-9;
const MAP_TOL: f64 = 1e-9;
const MARGINAL_TOL: f64 = 1e-8;
const GRADIENT_REL_TOL: f64 = 1e-4;
const GRADIENT_STEP: f64 = 1e-5;
const MIN_SPEEDUP: f64 = 10.0;
const MAX_QUADRATIC_SLOPE: f64 = 2.4;
const MIN_CUBIC_SLOPE: f64 = 2.6;
const GROWTH_TOL: f64 = 0.10;
const RECALL_TOL: f64 = 1e-12;

const SEEDS: u64 = 10;
const MAX_N: usize = 6;
const TIMING_ATTEMPTS: usize = 3;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} [{id}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn random_weights(n: usize, k: usize, seed: u64) -> WeightTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // odd seeds forbid about one mention in eight
    let forbid = seed % 2 == 1;
    WeightTable::from_fn(LabelSet::synthetic(k), n, |_| {
        if forbid && rng.random_bool(0.125) {
            f64::NEG_INFINITY
        } else {
            rng.random_range(-2.0..2.0)
        }
    })
    .unwrap()
}

fn oracle_equivalence(report: &mut Report) {
    let start = Instant::now();
    let (mut dz, mut dmap, mut dmu) = (0f64, 0f64, 0f64);
    let (mut cases, mut mismatches) = (0, Vec::new());
    for k in 1..=2 {
        for n in 0..=MAX_N {
            for alg in Algorithm::ALL {
                let oracle = Enumeration::new(alg.search_space(), n, k).unwrap();
                for seed in 0..SEEDS {
                    let w = random_weights(n, k, seed * 1000 + 10 * n as u64 + k as u64);
                    let truth = oracle.evaluate(&w).unwrap();
                    let (score, best) = map_inference(alg, &w);
                    let mu = marginals(alg, &w);
                    let z = log_partition(alg, &w);
                    dz = dz.max((z - truth.log_partition).abs());
                    dmap = dmap.max((score - truth.map_score).abs());
                    for ((_, p), (_, q)) in mu.iter().zip(truth.marginals.iter()) {
                        dmu = dmu.max((p - q).abs());
                    }
                    let count = count_supported(alg, &w).unwrap();
                    if count != truth.count || best != truth.map_analysis {
                        mismatches.push(format!("{alg} n={n} k={k} seed={seed}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = dz <= LOGZ_TOL && dmap <= MAP_TOL && dmu <= MARGINAL_TOL && mismatches.is_empty() && secs < 120.0;
    report.line(
        "1",
        "oracle equivalence",
        ok,
        format!(
            "{cases} cases; max |dlogZ| {dz:.1e} (tol {LOGZ_TOL:.0e}), max |dMAP| {dmap:.1e} (tol {MAP_TOL:.0e}), \
             max |dmarginal| {dmu:.1e} (tol {MARGINAL_TOL:.0e}), count/argmax mismatches {}{}; {secs:.1}s (limit 120s)",
            mismatches.len(),
            mismatches.first().map(|m| format!(" e.g. {m}")).unwrap_or_default()
        ),
    );
}

fn uniqueness(report: &mut Report) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 1..=2 {
        for n in 0..=MAX_N {
            for alg in Algorithm::ALL {
                let truth = Enumeration::new(alg.search_space(), n, k).unwrap().evaluate(&uniform_weights(n, k)).unwrap();
                let chart = count_analyses(alg, n, k).unwrap();
                if chart != truth.count {
                    bad.push(format!("{alg} n={n} k={k}: {chart} vs {}", truth.count));
                }
                checked += 1;
            }
        }
    }
    let sample = [
        (Algorithm::SemiMarkov, 6, 2),
        (Algorithm::QuadNested, 6, 2),
        (Algorithm::CykNested, 6, 2),
    ]
    .map(|(a, n, k)| format!("{a}={}", count_analyses(a, n, k).unwrap()));
    report.line(
        "2",
        "uniqueness of derivations",
        bad.is_empty(),
        format!("{checked} grid points, derivation count == |Y| exactly ({} at n=6,|T|=2); {} mismatches", sample.join(", "), bad.len()),
    );
}

fn separation(report: &mut Report) {
    let count = |alg, n, k| count_analyses(alg, n, k).unwrap();
    let mut ordered = true;
    for k in 1..=2 {
        for n in 0..=MAX_N {
            let (y1, y3, y2) = (
                count(Algorithm::SemiMarkov, n, k),
                count(Algorithm::QuadNested, n, k),
                count(Algorithm::CykNested, n, k),
            );
            ordered &= y1 <= y3 && y3 <= y2;
        }
    }
    let equal_small = (0..=3).all(|n| count(Algorithm::QuadNested, n, 1) == count(Algorithm::CykNested, n, 1));
    let (y3, y2) = (count(Algorithm::QuadNested, 4, 1), count(Algorithm::CykNested, 4, 1));
    report.line(
        "3",
        "search-space separation",
        ordered && equal_small && y3 < y2,
        format!("|Y1| <= |Y3| <= |Y2| on grid: {ordered}; |Y3| = |Y2| for n <= 3: {equal_small}; n=4,|T|=1: |Y3|={y3} < |Y2|={y2}"),
    );
}

fn rule_positions(trace: &DerivationTrace) -> Vec<Option<Rule>> {
    trace.steps().iter().map(|s| s.rule).collect()
}

fn traces(report: &mut Report) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/worked_examples.jsonl");
    let corpus = read_corpus(BufReader::new(File::open(path).unwrap())).unwrap();
    let labels = label_vocabulary(&corpus).unwrap();
    let mut problems = Vec::new();
    let mut decoded = Vec::new();
    for (s, record) in corpus.iter().enumerate() {
        let gold = record.gold(&labels).unwrap();
        let w = WeightTable::indicator(labels.clone(), record.len(), &gold, 1.0, -1.0).unwrap();
        for alg in Algorithm::ALL {
            if !validate_analysis(&gold, record.len(), alg.search_space()).unwrap().is_valid() {
                continue;
            }
            let d = viterbi_decode(alg, &w);
            if d.analysis != gold {
                problems.push(format!("sentence {} under {alg}", s + 1));
            }
            decoded.push((s, alg, d.trace));
        }
    }
    let trace_of = |s: usize, alg: Algorithm| decoded.iter().find(|d| d.0 == s && d.1 == alg).map(|d| &d.2);

    let walk = trace_of(3, Algorithm::QuadNested).and_then(|t| {
        let at = |item, rule| t.position(item).filter(|&p| t.steps()[p].rule == Some(rule));
        Some((
            at(Item::PartialLeft(3, 6), Rule::M)?,
            at(Item::PartialLeft(2, 6), Rule::N)?,
            at(Item::PartialRight(2, 6), Rule::P)?,
        ))
    });
    let walk_ok = matches!(walk, Some((m, n, p)) if m < n && n < p);

    let one_rule = match (trace_of(1, Algorithm::QuadNested), trace_of(1, Algorithm::CykNested)) {
        (Some(q), Some(c)) if q.len() == c.len() => {
            let diff: Vec<(Option<Rule>, Option<Rule>)> = rule_positions(q)
                .into_iter()
                .zip(rule_positions(c))
                .filter(|(a, b)| a != b)
                .collect();
            diff == [(Some(Rule::J), Some(Rule::C))]
        }
        _ => false,
    };
    let semi = trace_of(0, Algorithm::SemiMarkov).is_some();
    report.line(
        "4",
        "trace reproduction",
        problems.is_empty() && walk_ok && one_rule && semi,
        format!(
            "{} decodes recover gold exactly ({} misses); sentence 4 (m)->(n)->(p) at steps {}; \
             sentence 2 quadratic vs cubic differ only by (j)/(c): {one_rule}",
            decoded.len(),
            problems.len(),
            walk.map(|(m, n, p)| format!("{}, {}, {}", m + 1, n + 1, p + 1)).unwrap_or_else(|| "missing".into()),
        ),
    );
}

/// Mention chains where each mention has exactly one non-unary child.
fn chains(depth: usize) -> Vec<(usize, Analysis)> {
    let right = 2 * depth - 1;
    let centre = 2 * depth + 1;
    vec![
        (right, (0..depth).map(|d| Mention::new(0, 2 * d, right)).collect()),
        (right, (0..depth).map(|d| Mention::new(0, 0, right - 2 * d)).collect()),
        (centre, (0..depth).map(|d| Mention::new(0, d, centre - d)).collect()),
    ]
}

fn recursion(report: &mut Report) {
    let labels = LabelSet::new(["X"]).unwrap();
    let mut failures = Vec::new();
    for depth in 1..=20 {
        for (n, gold) in chains(depth) {
            let w = WeightTable::indicator(labels.clone(), n, &gold, 1.0, -1.0).unwrap();
            let (score, got) = map_inference(Algorithm::QuadNested, &w);
            if got != gold || score != depth as f64 {
                failures.push(depth);
            }
        }
    }
    report.line(
        "5",
        "unbounded recursion",
        failures.is_empty(),
        format!("depth 1..=20 chains (right-, left- and centre-embedded) decoded fully; failing depths {failures:?}"),
    );
}

fn gradient(report: &mut Report) {
    let mut worst = 0f64;
    for instance in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(4242 + instance);
        let w = WeightTable::from_fn(LabelSet::synthetic(2), 6, |_| rng.random_range(-2.0..2.0)).unwrap();
        for alg in Algorithm::ALL {
            let mu = marginals(alg, &w);
            for m in w.mentions() {
                let shifted = |d: f64| {
                    let mut v = w.clone();
                    v.set(m, w.get(m).unwrap() + d).unwrap();
                    log_partition(alg, &v)
                };
                let fd = (shifted(GRADIENT_STEP) - shifted(-GRADIENT_STEP)) / (2.0 * GRADIENT_STEP);
                let p = mu.get(m).unwrap();
                worst = worst.max((fd - p).abs() / p.abs());
            }
        }
    }
    report.line(
        "6",
        "gradient check",
        worst <= GRADIENT_REL_TOL,
        format!("5 instances, n=6, |T|=2, all algorithms: max relative error {worst:.2e} (tol {GRADIENT_REL_TOL:.0e})"),
    );
}

struct Timing {
    speedup: f64,
    slopes: [f64; 3],
    monotone: bool,
    rows: Vec<BenchRow>,
}

fn measure(seed: u64) -> Timing {
    let reps = 5;
    let at_300 = bench_weights(300, 7, seed);
    let cubic = time_decode(Algorithm::CykNested, &at_300, reps);
    let quadratic = time_decode(Algorithm::QuadNested, &at_300, reps);
    let mut rows = Vec::new();
    for alg in Algorithm::ALL {
        for n in [64, 128, 256, 512] {
            let seconds = time_decode(alg, &bench_weights(n, 7, seed), reps);
            rows.push(BenchRow { algorithm: alg, n, seconds });
        }
    }
    let slopes = Algorithm::ALL.map(|a| fit_loglog_slope(&rows, a).unwrap());
    let monotone = rows.windows(2).all(|p| p[0].algorithm != p[1].algorithm || p[0].seconds <= p[1].seconds);
    Timing { speedup: cubic / quadratic, slopes, monotone, rows }
}

fn timing(report: &mut Report) {
    let start = Instant::now();
    let pass = |t: &Timing| {
        let [semi, cyk, quad] = t.slopes;
        t.speedup >= MIN_SPEEDUP && quad <= MAX_QUADRATIC_SLOPE && semi <= MAX_QUADRATIC_SLOPE && cyk >= MIN_CUBIC_SLOPE
    };
    // Wall-clock measurements on shared machines are noisy; accept the first
    // attempt that meets every bound.
    let mut attempts = Vec::new();
    for attempt in 0..TIMING_ATTEMPTS {
        let t = measure(attempt as u64);
        let ok = pass(&t);
        attempts.push(t);
        if ok {
            break;
        }
    }
    let t = attempts.last().unwrap();
    let [semi, cyk, quad] = t.slopes;
    let secs = start.elapsed().as_secs_f64();
    let ms = |alg: Algorithm, n: usize| {
        t.rows.iter().find(|r| r.algorithm == alg && r.n == n).map_or(f64::NAN, |r| r.seconds * 1e3)
    };
    report.line(
        "7",
        "timing separation",
        pass(t) && secs < 600.0,
        format!(
            "n=300,|T|=7 cubic/quadratic = {:.1}x (min {MIN_SPEEDUP}); slopes over 64..512: quadratic {quad:.2}, \
             semi-markov {semi:.2} (max {MAX_QUADRATIC_SLOPE}), cyk {cyk:.2} (min {MIN_CUBIC_SLOPE}); \
             n=512 ms: semi-markov {:.2}, quadratic {:.2}, cyk {:.1}; nondecreasing in n: {}; attempt {}/{TIMING_ATTEMPTS}, {secs:.0}s",
            t.speedup,
            ms(Algorithm::SemiMarkov, 512),
            ms(Algorithm::QuadNested, 512),
            ms(Algorithm::CykNested, 512),
            t.monotone,
            attempts.len(),
        ),
    );
}

fn instance_growth(report: &mut Report) {
    let ratio = |alg, pick: &dyn Fn(&nestner::core::deduction::InstanceCounts) -> u64| {
        let small = pick(&enumerate_rule_instances(alg, 128, 7)) as f64;
        let large = pick(&enumerate_rule_instances(alg, 256, 7)) as f64;
        large / small
    };
    let semi = ratio(Algorithm::SemiMarkov, &|c| c.total());
    let quad = ratio(Algorithm::QuadNested, &|c| c.total());
    let cyk = ratio(Algorithm::CykNested, &|c| c.get(Rule::C) + c.get(Rule::E));
    let near = |x: f64, target: f64| (x / target - 1.0).abs() <= GROWTH_TOL;
    report.line(
        "8",
        "rule-instance growth",
        near(semi, 4.0) && near(quad, 4.0) && near(cyk, 8.0),
        format!(
            "n 128->256: semi-markov x{semi:.3}, quadratic x{quad:.3} (target 4), cyk binary (c)+(e) x{cyk:.3} (target 8); tolerance {:.0}%",
            GROWTH_TOL * 100.0
        ),
    );
}

fn coverage(report: &mut Report) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/overlap.jsonl");
    let corpus = read_corpus(BufReader::new(File::open(path).unwrap())).unwrap();
    let expect = [
        (SearchSpace::Nested, 1.0),
        (SearchSpace::RestrictedNested, 2.0 / 3.0),
        (SearchSpace::NonNested, 2.0 / 3.0),
    ];
    let got: Vec<(SearchSpace, f64)> =
        expect.iter().map(|&(s, _)| (s, max_recall(&corpus, s).unwrap().max_recall())).collect();
    let ok = expect.iter().zip(&got).all(|(e, g)| (e.1 - g.1).abs() <= RECALL_TOL);
    report.line(
        "9",
        "coverage methodology",
        ok,
        format!(
            "gold {{(0,4),(0,2),(2,4)}}: {}",
            got.iter().map(|(s, r)| format!("{} {r:.6}", s.name())).collect::<Vec<_>>().join(", ")
        ),
    );
    println!("SKIP [9b] published corpus recall: needs licensed ACE-2004/2005 and GENIA data in the line-delimited format");
}

fn main() {
    // `cargo test -- --list` and filters are harness conventions; ignore them.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut report = Report { failed: 0 };
    oracle_equivalence(&mut report);
    uniqueness(&mut report);
    separation(&mut report);
    traces(&mut report);
    recursion(&mut report);
    gradient(&mut report);
    timing(&mut report);
    instance_growth(&mut report);
    coverage(&mut report);
    println!("acceptance: {} failed", report.failed);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
