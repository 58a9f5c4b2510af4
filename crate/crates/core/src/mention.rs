use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Fencepost span `(left, right)` covering words `left+1..=right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    /// Left border.
    pub left: usize,
    /// Right border (exclusive in word terms).
    pub right: usize,
}

impl Span {
    /// New span; callers are responsible for `left < right`.
    pub const fn new(left: usize, right: usize) -> Self {
        Span { left, right }
    }

    /// Number of words covered.
    pub const fn len(self) -> usize {
        self.right - self.left
    }

    /// True for degenerate spans.
    pub const fn is_empty(self) -> bool {
        self.right <= self.left
    }

    /// True when the spans share no word.
    pub const fn is_disjoint(self, other: Span) -> bool {
        self.right <= other.left || other.right <= self.left
    }

    /// Strict containment; see [`is_inside`].
    pub const fn is_inside(self, outer: Span) -> bool {
        is_inside(self, outer)
    }
}

/// `inner` is inside `outer` iff `i' < i < j <= j'` or `i' <= i < j < j'`.
///
/// Identical spans are not inside each other.
pub const fn is_inside(inner: Span, outer: Span) -> bool {
    (outer.left < inner.left && inner.left < inner.right && inner.right <= outer.right)
        || (outer.left <= inner.left && inner.left < inner.right && inner.right < outer.right)
}

/// A typed span `⟨label, left, right⟩`.
///
/// Field order gives the canonical `(left, right, label)` ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mention {
    /// Left border.
    pub left: usize,
    /// Right border.
    pub right: usize,
    /// Index into the owning [`LabelSet`](crate::LabelSet).
    pub label: usize,
}

impl Mention {
    /// `⟨label, left, right⟩`.
    pub const fn new(label: usize, left: usize, right: usize) -> Self {
        Mention { left, right, label }
    }

    /// The untyped span.
    pub const fn span(self) -> Span {
        Span::new(self.left, self.right)
    }

    /// Number of words covered.
    pub const fn len(self) -> usize {
        self.right - self.left
    }

    /// True for degenerate spans, which are never valid mentions.
    pub const fn is_empty(self) -> bool {
        self.right <= self.left
    }

    /// `0 <= left < right <= n`.
    pub const fn fits(self, n: usize) -> bool {
        self.left < self.right && self.right <= n
    }

    /// Strict span containment, ignoring labels.
    pub const fn is_inside(self, outer: Mention) -> bool {
        is_inside(self.span(), outer.span())
    }
}

impl fmt::Display for Mention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨#{}, {}, {}⟩", self.label, self.left, self.right)
    }
}

/// A set of mentions, kept sorted by `(left, right, label)` without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Analysis {
    mentions: Vec<Mention>,
}

impl Analysis {
    /// The empty analysis.
    pub const fn empty() -> Self {
        Analysis { mentions: Vec::new() }
    }

    /// Canonicalizes `mentions` (sort + dedup).
    pub fn new(mut mentions: Vec<Mention>) -> Self {
        mentions.sort_unstable();
        mentions.dedup();
        Analysis { mentions }
    }

    /// Mentions in canonical order.
    pub fn mentions(&self) -> &[Mention] {
        &self.mentions
    }

    /// Iterates in canonical order.
    pub fn iter(&self) -> core::slice::Iter<'_, Mention> {
        self.mentions.iter()
    }

    /// Number of mentions.
    pub fn len(&self) -> usize {
        self.mentions.len()
    }

    /// True for the empty analysis.
    pub fn is_empty(&self) -> bool {
        self.mentions.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, mention: &Mention) -> bool {
        self.mentions.binary_search(mention).is_ok()
    }

    /// Consumes the analysis.
    pub fn into_vec(self) -> Vec<Mention> {
        self.mentions
    }
}

impl FromIterator<Mention> for Analysis {
    fn from_iter<I: IntoIterator<Item = Mention>>(iter: I) -> Self {
        Analysis::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Analysis {
    type Item = &'a Mention;
    type IntoIter = core::slice::Iter<'a, Mention>;

    fn into_iter(self) -> Self::IntoIter {
        self.mentions.iter()
    }
}

/// Mentions of `analysis` inside `mention` and not inside another mention
/// that is itself inside `mention`.
pub fn children_of(mention: Mention, analysis: &Analysis) -> Result<Vec<Mention>, Error> {
    if !analysis.contains(&mention) {
        return Err(Error::MentionNotInAnalysis(mention));
    }
    Ok(children_in(mention, analysis.mentions()))
}

pub(crate) fn children_in(parent: Mention, mentions: &[Mention]) -> Vec<Mention> {
    let inner: Vec<Mention> = mentions
        .iter()
        .copied()
        .filter(|m| m.is_inside(parent))
        .collect();
    inner
        .iter()
        .copied()
        .filter(|c| !inner.iter().any(|d| c.is_inside(*d)))
        .collect()
}
