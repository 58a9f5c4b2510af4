use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::chart::{antecedents, Antecedents};
use super::{inside, Algorithm, Item, Rule};
use crate::label::LabelSet;
use crate::mention::Analysis;
use crate::semiring::MaxTropical;
use crate::weights::WeightTable;

/// One line of a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Rule that derived the item, `None` for axioms.
    pub rule: Option<Rule>,
    /// The derived item.
    pub item: Item,
    /// Zero-based indices of the antecedent steps.
    pub antecedents: Vec<usize>,
}

/// A derivation listed antecedents-first; the last step derives the goal.
///
/// Steps follow a depth-first traversal from the goal, left antecedent first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivationTrace {
    steps: Vec<TraceStep>,
}

impl DerivationTrace {
    /// All steps.
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// True for an empty trace (never produced by the decoder).
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of applications of `rule`.
    pub fn rule_count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == Some(rule)).count()
    }

    /// Number of axiom steps.
    pub fn axiom_count(&self) -> usize {
        self.steps.iter().filter(|s| s.rule.is_none()).count()
    }

    /// Index of the first step deriving `item`.
    pub fn position(&self, item: Item) -> Option<usize> {
        self.steps.iter().position(|s| s.item == item)
    }

    /// Three-column rendering: step number, item, and rule with its antecedent
    /// steps (1-based), e.g. `15. [↦, 2, 6]   (j) with 14 & 12`.
    pub fn render(&self, labels: &LabelSet) -> String {
        let items: Vec<String> = self
            .steps
            .iter()
            .map(|s| alloc::format!("{}", s.item.display(labels)))
            .collect();
        let width = items.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        let number_width = alloc::format!("{}", self.steps.len()).len();
        let mut out = String::new();
        for (idx, (step, item)) in self.steps.iter().zip(&items).enumerate() {
            let pad = width - item.chars().count();
            let _ = write!(out, "{:>w$}. {item}{:pad$}   ", idx + 1, "", w = number_width);
            match step.rule {
                None => out.push_str("Axiom"),
                Some(rule) => {
                    let _ = write!(out, "{rule} with ");
                    for (x, a) in step.antecedents.iter().enumerate() {
                        if x > 0 {
                            out.push_str(" & ");
                        }
                        let _ = write!(out, "{}", a + 1);
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Result of MAP decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    /// `wᵀy*`; 0 when the empty analysis wins.
    pub score: f64,
    /// The highest-scoring analysis.
    pub analysis: Analysis,
    /// Its unique derivation.
    pub trace: DerivationTrace,
}

struct Frame {
    item: Item,
    rule: Option<Rule>,
    ants: Option<Antecedents>,
    done: [usize; 2],
    next: usize,
}

/// MAP decoding: max-plus inside pass, then a backtrace that recomputes each
/// chosen instance from the chart.
///
/// Ties between antecedent choices go to the smallest `(rule, split, label)`.
pub fn viterbi_decode(algorithm: Algorithm, weights: &WeightTable) -> Decoded {
    let chart = inside::<MaxTropical>(algorithm, weights);
    let n = weights.n();

    let frame = |item: Item| {
        let binding = if item.is_axiom(n) { None } else { chart.best_binding(item) };
        debug_assert!(item.is_axiom(n) || binding.is_some(), "{item} has no derivation");
        Frame {
            item,
            rule: binding.map(|b| b.rule),
            ants: binding.map(|b| antecedents(item, b)),
            done: [0; 2],
            next: 0,
        }
    };

    let mut steps: Vec<TraceStep> = Vec::new();
    let mut mentions = Vec::new();
    let mut stack = alloc::vec![frame(Item::RightState(n))];
    while let Some(top) = stack.last_mut() {
        let pending = top.ants.as_ref().and_then(|a| a.as_slice().get(top.next).copied());
        if let Some(child) = pending {
            stack.push(frame(child));
            continue;
        }
        let finished = stack.pop().expect("stack is non-empty");
        let arity = finished.ants.map_or(0, |a| a.as_slice().len());
        if let Item::Mention(m) = finished.item {
            mentions.push(m);
        }
        steps.push(TraceStep {
            rule: finished.rule,
            item: finished.item,
            antecedents: finished.done[..arity].to_vec(),
        });
        if let Some(parent) = stack.last_mut() {
            parent.done[parent.next] = steps.len() - 1;
            parent.next += 1;
        }
    }

    Decoded {
        score: chart.goal(),
        analysis: Analysis::new(mentions),
        trace: DerivationTrace { steps },
    }
}
