//! The three deduction systems and the chart passes that run them.
//!
//! Item kinds, with `n` the sentence length:
//!
//! * `[→, i]` ([`Item::RightState`]): analysis of the sentence prefix up to `i`.
//! * `[↦, i, j]` ([`Item::PartialRight`]): partial analysis of a mention starting
//!   at `i`, extended rightwards; `[↦, i, i]` are axioms for `i < n`.
//! * `[↔, i, j]` ([`Item::Complete`]): a mention over `(i, j)` with its internal structure.
//! * `[↤, i, j]` ([`Item::PartialLeft`]): partial analysis built leftwards from a
//!   non-unary child (quadratic algorithm only).
//! * `[t, i, j]` ([`Item::Mention`]): mention axioms weighted by `w`.
//!
//! The goal is always `[→, n]`.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::label::LabelSet;
use crate::mention::Mention;
use crate::space::SearchSpace;

mod chart;
mod outside;
mod rules;
mod viterbi;

pub use chart::{inside, Chart};
pub use outside::outside;
pub use rules::{
    enumerate_rule_instances, rule_table, Index, InstanceCounts, Pattern, RuleSchema,
    SideCondition,
};
pub use viterbi::{viterbi_decode, Decoded, DerivationTrace, TraceStep};

pub(crate) use chart::for_each_instance;
#[cfg(test)]
pub(crate) use chart::visit_schedule;

/// Which deduction system to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Left-to-right semi-Markov segmentation over non-nested mentions.
    SemiMarkov,
    /// Cubic-time CYK-like parser over nested mentions.
    CykNested,
    /// Quadratic-time parser over nested mentions with at most one long child.
    QuadNested,
}

impl Algorithm {
    /// All algorithms.
    pub const ALL: [Algorithm; 3] = [Algorithm::SemiMarkov, Algorithm::CykNested, Algorithm::QuadNested];

    /// The family of analyses this algorithm derives.
    pub const fn search_space(self) -> SearchSpace {
        match self {
            Algorithm::SemiMarkov => SearchSpace::NonNested,
            Algorithm::CykNested => SearchSpace::Nested,
            Algorithm::QuadNested => SearchSpace::RestrictedNested,
        }
    }

    /// The algorithm deriving exactly `space`.
    pub const fn for_space(space: SearchSpace) -> Self {
        match space {
            SearchSpace::NonNested => Algorithm::SemiMarkov,
            SearchSpace::Nested => Algorithm::CykNested,
            SearchSpace::RestrictedNested => Algorithm::QuadNested,
        }
    }

    /// Command-line name.
    pub const fn name(self) -> &'static str {
        match self {
            Algorithm::SemiMarkov => "semi-markov",
            Algorithm::CykNested => "cyk",
            Algorithm::QuadNested => "quadratic",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| alloc::format!("unknown algorithm `{s}` (expected semi-markov, cyk or quadratic)"))
    }
}

/// Deduction rule identifiers `(a)` to `(p)`.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P,
}

impl Rule {
    /// Every rule in identifier order.
    pub const ALL: [Rule; 16] = [
        Rule::A, Rule::B, Rule::C, Rule::D, Rule::E, Rule::F, Rule::G, Rule::H,
        Rule::I, Rule::J, Rule::K, Rule::L, Rule::M, Rule::N, Rule::O, Rule::P,
    ];

    /// Lower-case letter of the rule.
    pub const fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    /// Inverse of [`Rule::letter`].
    pub fn from_letter(c: char) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.letter() == c)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

/// A chart item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// `[→, i]`
    RightState(usize),
    /// `[↦, i, j]`
    PartialRight(usize, usize),
    /// `[↔, i, j]`
    Complete(usize, usize),
    /// `[↤, i, j]`
    PartialLeft(usize, usize),
    /// `[t, i, j]`
    Mention(Mention),
}

impl Item {
    /// Renders the item with label names, e.g. `[PER, 2, 8]`.
    pub fn display<'a>(&'a self, labels: &'a LabelSet) -> impl fmt::Display + 'a {
        ItemDisplay { item: self, labels: Some(labels) }
    }

    /// True for axioms given the sentence length.
    pub fn is_axiom(&self, n: usize) -> bool {
        match *self {
            Item::RightState(i) => i == 0,
            Item::PartialRight(i, j) => i == j && i < n,
            Item::Mention(_) => true,
            _ => false,
        }
    }
}

struct ItemDisplay<'a> {
    item: &'a Item,
    labels: Option<&'a LabelSet>,
}

impl fmt::Display for ItemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self.item {
            Item::RightState(i) => write!(f, "[→, {i}]"),
            Item::PartialRight(i, j) => write!(f, "[↦, {i}, {j}]"),
            Item::Complete(i, j) => write!(f, "[↔, {i}, {j}]"),
            Item::PartialLeft(i, j) => write!(f, "[↤, {i}, {j}]"),
            Item::Mention(m) => match self.labels.and_then(|l| l.name(m.label)) {
                Some(name) => write!(f, "[{name}, {}, {}]", m.left, m.right),
                None => write!(f, "[#{}, {}, {}]", m.label, m.left, m.right),
            },
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ItemDisplay { item: self, labels: None }.fmt(f)
    }
}
