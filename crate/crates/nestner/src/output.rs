//! Stable JSON rendering for command output.
//!
//! Numbers are rounded to 12 significant digits so that output is
//! byte-identical across runs; non-finite values become the strings `"inf"`
//! and `"-inf"`.

use nestner_core::corpus::CoverageReport;
use nestner_core::{Analysis, LabelSet, MarginalTable, Mention};
use serde_json::{json, Value};

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// A JSON number, or a string for infinities.
pub fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn mention(labels: &LabelSet, m: Mention) -> Value {
    json!({"type": labels.name(m.label).unwrap_or("?"), "start": m.left, "end": m.right})
}

/// Mentions in canonical order.
pub fn mentions(labels: &LabelSet, analysis: &Analysis) -> Value {
    Value::Array(analysis.iter().map(|&m| mention(labels, m)).collect())
}

/// `{"score": .., "mentions": [..]}`.
pub fn decoded(labels: &LabelSet, score: f64, analysis: &Analysis) -> Value {
    json!({"score": number(score), "mentions": mentions(labels, analysis)})
}

/// `{"log_partition": .., "marginals": [{"type", "start", "end", "probability"}..]}`.
pub fn marginals(labels: &LabelSet, table: &MarginalTable) -> Value {
    let rows = table
        .iter()
        .map(|(m, p)| {
            let mut row = mention(labels, m);
            row["probability"] = number(p);
            row
        })
        .collect();
    json!({"log_partition": number(table.log_partition()), "marginals": Value::Array(rows)})
}

/// Coverage report as a flat object.
pub fn coverage(report: &CoverageReport) -> Value {
    json!({
        "space": report.space.name(),
        "sentences": report.sentences,
        "total_gold": report.total_gold,
        "recoverable": report.recoverable,
        "max_recall": number(report.max_recall()),
        "same_span_sentences": report.same_span_sentences,
        "partial_overlap_sentences": report.partial_overlap_sentences,
    })
}
