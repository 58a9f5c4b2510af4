use alloc::vec;
use alloc::vec::Vec;

use super::{Algorithm, Item, Rule};
use crate::error::Error;
use crate::mention::Mention;
use crate::semiring::Semiring;
use crate::triangle::{triangle_len, Triangle};
use crate::weights::{mention_offset, WeightTable};

/// Which instance of a rule produced a cell: the rule, its free split index
/// (`k` for binary rules over a split point, `i` for `(a)`/`(h)`) and the
/// mention label for `(a)`/`(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Binding {
    pub rule: Rule,
    pub split: u32,
    pub label: u32,
}

impl Binding {
    #[inline(always)]
    const fn new(rule: Rule, split: usize, label: usize) -> Self {
        Binding { rule, split: split as u32, label: label as u32 }
    }
}

/// A [`Binding`] packed into one word so the argmax update can be branch-free;
/// `NONE` marks an item without instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Packed(u64);

impl Packed {
    pub(crate) const NONE: Packed = Packed(u64::MAX);

    #[inline(always)]
    const fn new(rule: Rule, split: usize, label: usize) -> Self {
        Packed((rule as u64) << 56 | (split as u64) << 28 | label as u64)
    }

    #[inline(always)]
    fn unpack(self) -> Option<Binding> {
        (self != Packed::NONE).then(|| Binding {
            rule: Rule::ALL[(self.0 >> 56) as usize],
            split: (self.0 >> 28 & 0x0fff_ffff) as u32,
            label: (self.0 & 0x0fff_ffff) as u32,
        })
    }
}

/// One or two antecedent items.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Antecedents {
    items: [Item; 2],
    len: usize,
}

impl Antecedents {
    #[inline(always)]
    const fn one(a: Item) -> Self {
        Antecedents { items: [a, a], len: 1 }
    }

    #[inline(always)]
    const fn two(a: Item, b: Item) -> Self {
        Antecedents { items: [a, b], len: 2 }
    }

    #[inline(always)]
    pub(crate) fn as_slice(&self) -> &[Item] {
        &self.items[..self.len]
    }
}

/// Antecedents of `consequent` under `binding`.
#[inline(always)]
pub(crate) fn antecedents(consequent: Item, binding: Binding) -> Antecedents {
    use Item::{Complete as Cm, PartialLeft as Pl, PartialRight as Pr, RightState as Rs};
    let (k, t) = (binding.split as usize, binding.label as usize);
    match (binding.rule, consequent) {
        (Rule::A, Rs(j)) => Antecedents::two(Rs(k), Item::Mention(Mention::new(t, k, j))),
        (Rule::B | Rule::I, Rs(j)) => Antecedents::one(Rs(j - 1)),
        (Rule::H, Rs(j)) => Antecedents::two(Rs(k), Cm(k, j)),
        (Rule::C, Pr(i, j)) => Antecedents::two(Pr(i, k), Cm(k, j)),
        (Rule::D, Pr(i, j)) => Antecedents::one(Pr(i, j - 1)),
        (Rule::E, Pr(i, j)) => Antecedents::two(Cm(i, k), Cm(k, j)),
        (Rule::F, Pr(i, j)) => Antecedents::one(Cm(i, j - 1)),
        (Rule::J, Pr(i, j)) => Antecedents::two(Pr(i, j - 1), Cm(j - 1, j)),
        (Rule::K, Pr(i, j)) => Antecedents::two(Cm(i, j - 1), Cm(j - 1, j)),
        (Rule::P, Pr(i, j)) => Antecedents::one(Pl(i, j)),
        (Rule::G, Cm(i, j)) => Antecedents::two(Pr(i, j), Item::Mention(Mention::new(t, i, j))),
        (Rule::L, Pl(i, j)) => Antecedents::two(Cm(i, i + 1), Cm(i + 1, j)),
        (Rule::M, Pl(i, j)) => Antecedents::one(Cm(i + 1, j)),
        (Rule::N, Pl(i, j)) => Antecedents::one(Pl(i + 1, j)),
        (Rule::O, Pl(i, j)) => Antecedents::two(Cm(i, i + 1), Pl(i + 1, j)),
        (rule, item) => unreachable!("rule {rule} cannot derive {item}"),
    }
}

/// Calls `f` for every rule instance whose consequent is `consequent`, in
/// increasing `(rule, split, label)` order. Axioms have no instances.
#[inline(always)]
pub(crate) fn for_each_instance(
    algorithm: Algorithm,
    num_labels: usize,
    consequent: Item,
    mut f: impl FnMut(Binding, &[Item]),
) {
    let mut emit = |rule: Rule, split: usize, label: usize| {
        let binding = Binding::new(rule, split, label);
        f(binding, antecedents(consequent, binding).as_slice());
    };
    match (algorithm, consequent) {
        (_, Item::RightState(0)) => {}
        (Algorithm::SemiMarkov, Item::RightState(j)) => {
            for i in 0..j {
                for t in 0..num_labels {
                    emit(Rule::A, i, t);
                }
            }
            emit(Rule::B, 0, 0);
        }
        (_, Item::RightState(j)) => {
            for i in 0..j {
                emit(Rule::H, i, 0);
            }
            emit(Rule::I, 0, 0);
        }
        (Algorithm::CykNested, Item::PartialRight(i, j)) if i < j => {
            for k in i + 1..j {
                emit(Rule::C, k, 0);
            }
            emit(Rule::D, 0, 0);
            for k in i + 1..j {
                emit(Rule::E, k, 0);
            }
            if i + 1 < j {
                emit(Rule::F, 0, 0);
            }
        }
        (Algorithm::QuadNested, Item::PartialRight(i, j)) if i < j => {
            emit(Rule::D, 0, 0);
            if i + 1 < j {
                emit(Rule::F, 0, 0);
                emit(Rule::J, 0, 0);
                emit(Rule::K, 0, 0);
            }
            emit(Rule::P, 0, 0);
        }
        (Algorithm::CykNested | Algorithm::QuadNested, Item::Complete(_, _)) => {
            for t in 0..num_labels {
                emit(Rule::G, 0, t);
            }
        }
        (Algorithm::QuadNested, Item::PartialLeft(i, j)) => {
            if i + 2 < j {
                emit(Rule::L, 0, 0);
                emit(Rule::M, 0, 0);
            }
            if i + 1 < j {
                emit(Rule::N, 0, 0);
                emit(Rule::O, 0, 0);
            }
        }
        _ => {}
    }
}

/// Visits every derivable (non-axiom) item in the static schedule: widths
/// `1..=n`, within a width all `[↤]`, then all `[↦]`, then all `[↔]`; finally
/// `[→, 1..=n]` left to right.
#[cfg(test)]
pub(crate) fn visit_schedule(algorithm: Algorithm, n: usize, mut f: impl FnMut(Item)) {
    if algorithm != Algorithm::SemiMarkov {
        for width in 1..=n {
            if algorithm == Algorithm::QuadNested {
                for i in 0..=n - width {
                    f(Item::PartialLeft(i, i + width));
                }
            }
            for i in 0..=n - width {
                f(Item::PartialRight(i, i + width));
            }
            for i in 0..=n - width {
                f(Item::Complete(i, i + width));
            }
        }
    }
    for j in 1..=n {
        f(Item::RightState(j));
    }
}

/// Exact reverse of [`visit_schedule`].
#[inline]
pub(crate) fn visit_schedule_rev(algorithm: Algorithm, n: usize, mut f: impl FnMut(Item)) {
    for j in (1..=n).rev() {
        f(Item::RightState(j));
    }
    if algorithm != Algorithm::SemiMarkov {
        for width in (1..=n).rev() {
            for i in (0..=n - width).rev() {
                f(Item::Complete(i, i + width));
            }
            for i in (0..=n - width).rev() {
                f(Item::PartialRight(i, i + width));
            }
            if algorithm == Algorithm::QuadNested {
                for i in (0..=n - width).rev() {
                    f(Item::PartialLeft(i, i + width));
                }
            }
        }
    }
}

/// Semiring values for every item of one sentence.
///
/// Built by [`inside`] (inside values) or [`outside`](super::outside) (outside
/// values). Tables for item kinds the algorithm does not use are empty.
#[derive(Debug, Clone)]
pub struct Chart<S: Semiring> {
    algorithm: Algorithm,
    n: usize,
    num_labels: usize,
    right: Vec<S::Value>,
    partial_right: Triangle<S::Value>,
    complete: Triangle<S::Value>,
    partial_left: Triangle<S::Value>,
    mention: Vec<S::Value>,
}

/// Charts compare equal when every cell and backpointer is identical.
impl<S: Semiring> PartialEq for Chart<S> {
    fn eq(&self, other: &Self) -> bool {
        self.algorithm == other.algorithm
            && self.n == other.n
            && self.num_labels == other.num_labels
            && self.right == other.right
            && self.partial_right == other.partial_right
            && self.complete == other.complete
            && self.partial_left == other.partial_left
            && self.mention == other.mention
    }
}

impl<S: Semiring> Chart<S> {
    pub(crate) fn zeroed(algorithm: Algorithm, n: usize, num_labels: usize) -> Self {
        Self::zeroed_with_mentions(algorithm, n, num_labels, vec![S::zero(); num_labels * triangle_len(n)])
    }

    fn zeroed_with_mentions(algorithm: Algorithm, n: usize, num_labels: usize, mention: Vec<S::Value>) -> Self {
        let span_table = |used: bool| {
            if used {
                Triangle::new(n, S::zero())
            } else {
                Triangle::unused(S::zero())
            }
        };
        Chart {
            algorithm,
            n,
            num_labels,
            right: vec![S::zero(); n + 1],
            partial_right: span_table(algorithm != Algorithm::SemiMarkov),
            complete: span_table(algorithm != Algorithm::SemiMarkov),
            partial_left: span_table(algorithm == Algorithm::QuadNested),
            mention,
        }
    }

    /// Algorithm the chart was computed for.
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Sentence length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of mention labels.
    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// Value of the goal item `[→, n]`.
    pub fn goal(&self) -> S::Value {
        self.right[self.n]
    }

    /// Value of `item`, or `None` if the item is not part of this chart.
    pub fn value(&self, item: Item) -> Option<S::Value> {
        let n = self.n;
        let in_span = |i: usize, j: usize| i <= j && j <= n;
        match item {
            Item::RightState(i) if i <= n => Some(self.right[i]),
            Item::PartialRight(i, j) | Item::Complete(i, j)
                if self.algorithm != Algorithm::SemiMarkov && in_span(i, j) =>
            {
                Some(self.get(item))
            }
            Item::PartialLeft(i, j) if self.algorithm == Algorithm::QuadNested && in_span(i, j) => {
                Some(self.get(item))
            }
            Item::Mention(m) if m.label < self.num_labels && m.fits(n) => Some(self.get(item)),
            _ => None,
        }
    }

    #[inline(always)]
    pub(crate) fn get(&self, item: Item) -> S::Value {
        match item {
            Item::RightState(i) => self.right[i],
            Item::PartialRight(i, j) => self.partial_right.get(i, j),
            Item::Complete(i, j) => self.complete.get(i, j),
            Item::PartialLeft(i, j) => self.partial_left.get(i, j),
            Item::Mention(m) => self.mention[self.mention_offset(m)],
        }
    }

    #[inline(always)]
    pub(crate) fn slot(&mut self, item: Item) -> &mut S::Value {
        match item {
            Item::RightState(i) => &mut self.right[i],
            Item::PartialRight(i, j) => self.partial_right.get_mut(i, j),
            Item::Complete(i, j) => self.complete.get_mut(i, j),
            Item::PartialLeft(i, j) => self.partial_left.get_mut(i, j),
            Item::Mention(m) => {
                let idx = self.mention_offset(m);
                &mut self.mention[idx]
            }
        }
    }

    #[inline(always)]
    fn mention_offset(&self, m: Mention) -> usize {
        mention_offset(self.n, self.num_labels, m.label, m.left, m.right)
    }

    /// The first preferred instance of a derived `item`, recomputed from the
    /// filled chart exactly as the inside pass chose it. `None` for axioms and
    /// items without instances.
    pub(crate) fn best_binding(&self, item: Item) -> Option<Binding> {
        let acc = match item {
            Item::RightState(0) | Item::Mention(_) => return None,
            Item::RightState(j) => self.combine_right_state(j),
            Item::PartialRight(i, j) if i == j => return None,
            Item::PartialRight(i, j) if self.algorithm == Algorithm::QuadNested => {
                self.combine_partial_right_quadratic(i, j)
            }
            Item::PartialRight(i, j) => self.combine_partial_right_cubic(i, j),
            Item::Complete(i, j) => self.combine_complete(i, j),
            Item::PartialLeft(i, j) => self.combine_partial_left(i, j),
        };
        acc.best.unpack()
    }

    pub(crate) fn check_matches(&self, algorithm: Algorithm, weights: &WeightTable) -> Result<(), Error> {
        if self.algorithm != algorithm {
            return Err(Error::ChartMismatch("algorithm differs"));
        }
        if self.n != weights.n() || self.num_labels != weights.num_labels() {
            return Err(Error::ChartMismatch("sentence length or label count differs"));
        }
        Ok(())
    }
}

/// Running ⊕ over the instances of one consequent, remembering the first
/// preferred binding when the semiring selects a single derivation.
struct Acc<S: Semiring> {
    value: S::Value,
    best: Packed,
}

impl<S: Semiring> Acc<S> {
    #[inline(always)]
    fn new() -> Self {
        Acc { value: S::zero(), best: Packed::NONE }
    }

    #[inline(always)]
    fn push(&mut self, value: S::Value, rule: Rule, split: usize, label: usize) {
        if S::TRACKS_ARGMAX {
            let take = self.best == Packed::NONE || S::prefer(value, self.value);
            self.value = if take { value } else { self.value };
            self.best = if take { Packed::new(rule, split, label) } else { self.best };
        } else {
            self.value = S::plus(self.value, value);
        }
    }
}

impl<S: Semiring> Chart<S> {
    /// Chart with axioms filled in and every derived item at zero.
    fn with_axioms(algorithm: Algorithm, weights: &WeightTable) -> Self {
        let (n, num_labels) = (weights.n(), weights.num_labels());
        // same span-major layout as the weight table
        let mention = weights.raw().iter().map(|&w| S::lift(w)).collect();
        let mut chart = Chart::<S>::zeroed_with_mentions(algorithm, n, num_labels, mention);
        chart.right[0] = S::one();
        if algorithm != Algorithm::SemiMarkov {
            for i in 0..n {
                *chart.partial_right.get_mut(i, i) = S::one();
            }
        }
        chart
    }

    /// Mention values of span `(i, j)` for every label, in label order.
    #[inline(always)]
    fn mentions_of(&self, i: usize, j: usize) -> &[S::Value] {
        let start = mention_offset(self.n, self.num_labels, 0, i, j);
        &self.mention[start..start + self.num_labels]
    }

    // The `combine_*` methods compute the ⊕ over the instances of one item,
    // enumerated exactly as `for_each_instance` does but reading the tables
    // directly.

    #[inline(always)]
    fn combine_right_state(&self, j: usize) -> Acc<S> {
        let mut acc = Acc::<S>::new();
        if self.algorithm == Algorithm::SemiMarkov {
            for i in 0..j {
                let left = self.right[i];
                for (t, &m) in self.mentions_of(i, j).iter().enumerate() {
                    acc.push(S::times(left, m), Rule::A, i, t);
                }
            }
            acc.push(self.right[j - 1], Rule::B, 0, 0);
        } else {
            for i in 0..j {
                acc.push(S::times(self.right[i], self.complete.get(i, j)), Rule::H, i, 0);
            }
            acc.push(self.right[j - 1], Rule::I, 0, 0);
        }
        acc
    }

    #[inline(always)]
    fn combine_partial_right_cubic(&self, i: usize, j: usize) -> Acc<S> {
        let (pr, cm) = (&self.partial_right, &self.complete);
        let mut acc = Acc::<S>::new();
        for k in i + 1..j {
            acc.push(S::times(pr.get(i, k), cm.get(k, j)), Rule::C, k, 0);
        }
        acc.push(pr.get(i, j - 1), Rule::D, 0, 0);
        for k in i + 1..j {
            acc.push(S::times(cm.get(i, k), cm.get(k, j)), Rule::E, k, 0);
        }
        if i + 1 < j {
            acc.push(cm.get(i, j - 1), Rule::F, 0, 0);
        }
        acc
    }

    #[inline(always)]
    fn combine_partial_right_quadratic(&self, i: usize, j: usize) -> Acc<S> {
        let (pr, cm) = (&self.partial_right, &self.complete);
        let mut acc = Acc::<S>::new();
        let grown = pr.get(i, j - 1);
        acc.push(grown, Rule::D, 0, 0);
        if i + 1 < j {
            let closed = cm.get(i, j - 1);
            let unary = cm.get(j - 1, j);
            acc.push(closed, Rule::F, 0, 0);
            acc.push(S::times(grown, unary), Rule::J, 0, 0);
            acc.push(S::times(closed, unary), Rule::K, 0, 0);
        }
        acc.push(self.partial_left.get(i, j), Rule::P, 0, 0);
        acc
    }

    #[inline(always)]
    fn combine_partial_left(&self, i: usize, j: usize) -> Acc<S> {
        let (cm, pl) = (&self.complete, &self.partial_left);
        let mut acc = Acc::<S>::new();
        if i + 1 < j {
            let unary = cm.get(i, i + 1);
            if i + 2 < j {
                let child = cm.get(i + 1, j);
                acc.push(S::times(unary, child), Rule::L, 0, 0);
                acc.push(child, Rule::M, 0, 0);
            }
            let inner = pl.get(i + 1, j);
            acc.push(inner, Rule::N, 0, 0);
            acc.push(S::times(unary, inner), Rule::O, 0, 0);
        }
        acc
    }

    #[inline(always)]
    fn combine_complete(&self, i: usize, j: usize) -> Acc<S> {
        let inner = self.partial_right.get(i, j);
        let mut acc = Acc::<S>::new();
        for (t, &m) in self.mentions_of(i, j).iter().enumerate() {
            acc.push(S::times(inner, m), Rule::G, 0, t);
        }
        acc
    }
}

/// Inside pass: fills every item with the ⊕ over its derivations of the ⊗ of
/// lifted axiom weights. The goal holds the value of the whole search space.
///
/// Cells are filled width by width (`[↤]`, then `[↦]`, then `[↔]` within a
/// width), then `[→, 1..=n]` left to right.
pub fn inside<S: Semiring>(algorithm: Algorithm, weights: &WeightTable) -> Chart<S> {
    let n = weights.n();
    let mut chart = Chart::<S>::with_axioms(algorithm, weights);
    if algorithm != Algorithm::SemiMarkov {
        for width in 1..=n {
            if algorithm == Algorithm::QuadNested {
                for i in 0..=n - width {
                    *chart.partial_left.get_mut(i, i + width) = chart.combine_partial_left(i, i + width).value;
                }
            }
            for i in 0..=n - width {
                let acc = if algorithm == Algorithm::QuadNested {
                    chart.combine_partial_right_quadratic(i, i + width)
                } else {
                    chart.combine_partial_right_cubic(i, i + width)
                };
                *chart.partial_right.get_mut(i, i + width) = acc.value;
            }
            for i in 0..=n - width {
                *chart.complete.get_mut(i, i + width) = chart.combine_complete(i, i + width).value;
            }
        }
    }
    for j in 1..=n {
        chart.right[j] = chart.combine_right_state(j).value;
    }
    chart
}

/// Inside pass driven by the generic instance enumeration; the reference the
/// table-reading kernel is checked against.
#[cfg(test)]
pub(crate) fn inside_by_instances<S: Semiring>(algorithm: Algorithm, weights: &WeightTable) -> Chart<S> {
    let mut chart = Chart::<S>::with_axioms(algorithm, weights);
    visit_schedule(algorithm, weights.n(), |item| {
        let mut acc = Acc::<S>::new();
        for_each_instance(algorithm, weights.num_labels(), item, |binding, ants| {
            let mut value = chart.get(ants[0]);
            if let Some(&second) = ants.get(1) {
                value = S::times(value, chart.get(second));
            }
            acc.push(value, binding.rule, binding.split as usize, binding.label as usize);
        });
        *chart.slot(item) = acc.value;
    });
    chart
}

/// First preferred instance of `item` by generic enumeration.
#[cfg(test)]
pub(crate) fn best_binding_by_instances<S: Semiring>(chart: &Chart<S>, item: Item) -> Option<Binding> {
    let mut acc = Acc::<S>::new();
    for_each_instance(chart.algorithm, chart.num_labels, item, |binding, ants| {
        let mut value = chart.get(ants[0]);
        if let Some(&second) = ants.get(1) {
            value = S::times(value, chart.get(second));
        }
        acc.push(value, binding.rule, binding.split as usize, binding.label as usize);
    });
    acc.best.unpack()
}
