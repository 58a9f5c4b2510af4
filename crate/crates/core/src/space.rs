use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::mention::{children_in, Analysis, Mention};

/// The three families of admissible analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchSpace {
    /// Pairwise disjoint mentions.
    NonNested,
    /// Mentions are disjoint or strictly nested; no partial overlap, no shared span.
    Nested,
    /// Nested, and every mention has at most one child longer than one word.
    RestrictedNested,
}

impl SearchSpace {
    /// All spaces, smallest first.
    pub const ALL: [SearchSpace; 3] = [
        SearchSpace::NonNested,
        SearchSpace::RestrictedNested,
        SearchSpace::Nested,
    ];

    /// Command-line name.
    pub const fn name(self) -> &'static str {
        match self {
            SearchSpace::NonNested => "non-nested",
            SearchSpace::Nested => "nested",
            SearchSpace::RestrictedNested => "restricted",
        }
    }

    /// Inverse of [`SearchSpace::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        SearchSpace::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Whether a pair of distinct mentions may coexist in this space.
    ///
    /// This is the complete test for `NonNested` and `Nested`; `RestrictedNested`
    /// additionally needs the child-count check of [`SearchSpace::admits`].
    pub fn pair_compatible(self, a: Mention, b: Mention) -> bool {
        let (sa, sb) = (a.span(), b.span());
        match self {
            SearchSpace::NonNested => sa.is_disjoint(sb),
            SearchSpace::Nested | SearchSpace::RestrictedNested => {
                sa.is_disjoint(sb) || sa.is_inside(sb) || sb.is_inside(sa)
            }
        }
    }

    /// Allocation-light validity test for in-range mentions.
    pub fn admits(self, mentions: &[Mention]) -> bool {
        for (x, a) in mentions.iter().enumerate() {
            for b in &mentions[x + 1..] {
                if !self.pair_compatible(*a, *b) {
                    return false;
                }
            }
        }
        if self != SearchSpace::RestrictedNested {
            return true;
        }
        // In a valid nested set the parent of a mention is its smallest container.
        let mut long_children = alloc::vec![0u8; mentions.len()];
        for c in mentions.iter().filter(|c| c.len() > 1) {
            let parent = mentions
                .iter()
                .enumerate()
                .filter(|(_, p)| c.is_inside(**p))
                .min_by_key(|(_, p)| p.len())
                .map(|(idx, _)| idx);
            if let Some(p) = parent {
                long_children[p] += 1;
                if long_children[p] > 1 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One reason an analysis falls outside a search space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two mentions share the same span.
    IdenticalSpan(Mention, Mention),
    /// Spans cross without one containing the other.
    PartialOverlap(Mention, Mention),
    /// Non-nested space only: two spans share words.
    Overlap(Mention, Mention),
    /// Restricted space only: a parent with several children longer than one word.
    MultipleLongChildren {
        /// The offending parent.
        parent: Mention,
        /// Its children of length > 1.
        children: Vec<Mention>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdenticalSpan(a, b) => write!(f, "{a} and {b} share a span"),
            Violation::PartialOverlap(a, b) => write!(f, "{a} and {b} partially overlap"),
            Violation::Overlap(a, b) => write!(f, "{a} and {b} overlap"),
            Violation::MultipleLongChildren { parent, children } => {
                write!(f, "{parent} has {} children longer than one word", children.len())
            }
        }
    }
}

/// Outcome of [`validate_analysis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    /// Space the analysis was checked against.
    pub space: SearchSpace,
    /// Every violation found; empty iff valid.
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    /// True when no violation was found.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid ({})", self.space);
        }
        write!(f, "invalid ({})", self.space)?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

/// Checks `analysis` against `space` for a sentence of `n` words.
pub fn validate_analysis(
    analysis: &Analysis,
    n: usize,
    space: SearchSpace,
) -> Result<ValidityReport, Error> {
    if let Some(m) = analysis.iter().find(|m| !m.fits(n)) {
        return Err(Error::MentionOutOfRange { mention: *m, n });
    }
    let mentions = analysis.mentions();
    let mut violations = Vec::new();
    for (x, &a) in mentions.iter().enumerate() {
        for &b in &mentions[x + 1..] {
            if space.pair_compatible(a, b) {
                continue;
            }
            violations.push(if a.span() == b.span() {
                Violation::IdenticalSpan(a, b)
            } else if space == SearchSpace::NonNested {
                Violation::Overlap(a, b)
            } else {
                Violation::PartialOverlap(a, b)
            });
        }
    }
    if space == SearchSpace::RestrictedNested {
        for &parent in mentions {
            let children: Vec<Mention> = children_in(parent, mentions)
                .into_iter()
                .filter(|c| c.len() > 1)
                .collect();
            if children.len() > 1 {
                violations.push(Violation::MultipleLongChildren { parent, children });
            }
        }
    }
    Ok(ValidityReport { space, violations })
}
