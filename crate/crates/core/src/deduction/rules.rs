//! Rule schemas as data, and instance counting by brute-force binding.
//!
//! The chart engine hard-codes how each rule is instantiated; the tables here
//! restate the rules declaratively so the engine's work can be checked against
//! an independent count.

use super::{Algorithm, Rule};

/// Index expression over the free variables of a rule.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    I,
    J,
    K,
    IMinus1,
    IPlus1,
    JMinus1,
}

/// Item pattern in a rule schema.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    RightState(Index),
    PartialRight(Index, Index),
    Complete(Index, Index),
    PartialLeft(Index, Index),
    /// `[t, ·, ·]` for every label `t`.
    Mention(Index, Index),
}

/// Side condition on the bound indices.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    None,
    ILessK,
    ILessJ,
    ILessJMinus1,
    IPlus2LessJ,
    ILessKLessJ,
}

/// One deduction rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSchema {
    /// Rule identifier.
    pub rule: Rule,
    /// One or two antecedent patterns.
    pub antecedents: &'static [Pattern],
    /// Consequent pattern.
    pub consequent: Pattern,
    /// Constraint on the bound indices.
    pub side_condition: SideCondition,
}

const fn schema(
    rule: Rule,
    antecedents: &'static [Pattern],
    consequent: Pattern,
    side_condition: SideCondition,
) -> RuleSchema {
    RuleSchema { rule, antecedents, consequent, side_condition }
}

use Index::{IMinus1, IPlus1, JMinus1, I, J, K};
use Pattern::{Complete as Cm, Mention as Mt, PartialLeft as Pl, PartialRight as Pr, RightState as Rs};
use SideCondition as Sc;

const RULE_D: RuleSchema = schema(Rule::D, &[Pr(I, JMinus1)], Pr(I, J), Sc::None);
const RULE_F: RuleSchema = schema(Rule::F, &[Cm(I, JMinus1)], Pr(I, J), Sc::None);
const RULE_G: RuleSchema = schema(Rule::G, &[Pr(I, J), Mt(I, J)], Cm(I, J), Sc::ILessJ);
const RULE_H: RuleSchema = schema(Rule::H, &[Rs(I), Cm(I, J)], Rs(J), Sc::None);
const RULE_I: RuleSchema = schema(Rule::I, &[Rs(IMinus1)], Rs(I), Sc::None);

static SEMI_MARKOV: [RuleSchema; 2] = [
    schema(Rule::A, &[Rs(I), Mt(I, J)], Rs(J), Sc::None),
    schema(Rule::B, &[Rs(IMinus1)], Rs(I), Sc::None),
];

static CYK_NESTED: [RuleSchema; 7] = [
    schema(Rule::C, &[Pr(I, K), Cm(K, J)], Pr(I, J), Sc::ILessK),
    RULE_D,
    schema(Rule::E, &[Cm(I, K), Cm(K, J)], Pr(I, J), Sc::ILessKLessJ),
    RULE_F,
    RULE_G,
    RULE_H,
    RULE_I,
];

static QUAD_NESTED: [RuleSchema; 12] = [
    RULE_D,
    RULE_F,
    RULE_G,
    RULE_H,
    RULE_I,
    schema(Rule::J, &[Pr(I, JMinus1), Cm(JMinus1, J)], Pr(I, J), Sc::ILessJMinus1),
    schema(Rule::K, &[Cm(I, JMinus1), Cm(JMinus1, J)], Pr(I, J), Sc::ILessJMinus1),
    schema(Rule::L, &[Cm(I, IPlus1), Cm(IPlus1, J)], Pl(I, J), Sc::IPlus2LessJ),
    schema(Rule::M, &[Cm(IPlus1, J)], Pl(I, J), Sc::IPlus2LessJ),
    schema(Rule::N, &[Pl(IPlus1, J)], Pl(I, J), Sc::None),
    schema(Rule::O, &[Cm(I, IPlus1), Pl(IPlus1, J)], Pl(I, J), Sc::None),
    schema(Rule::P, &[Pl(I, J)], Pr(I, J), Sc::None),
];

/// The rule inventory of `algorithm`, in identifier order.
///
/// All algorithms share the axioms `[→, 0]` and `[t, i, j]`; the nested ones
/// add `[↦, i, i]` for `i < n`. The goal is `[→, n]`.
pub fn rule_table(algorithm: Algorithm) -> &'static [RuleSchema] {
    match algorithm {
        Algorithm::SemiMarkov => &SEMI_MARKOV,
        Algorithm::CykNested => &CYK_NESTED,
        Algorithm::QuadNested => &QUAD_NESTED,
    }
}

/// Number of instances per rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InstanceCounts {
    counts: [u64; 16],
}

impl InstanceCounts {
    /// Instances of `rule`.
    pub fn get(&self, rule: Rule) -> u64 {
        self.counts[rule as usize]
    }

    /// Total instances: the algorithm's work measure.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Rules with at least one instance.
    pub fn iter(&self) -> impl Iterator<Item = (Rule, u64)> + '_ {
        Rule::ALL.into_iter().map(|r| (r, self.get(r))).filter(|(_, c)| *c > 0)
    }

    pub(crate) fn add(&mut self, rule: Rule, count: u64) {
        self.counts[rule as usize] += count;
    }
}

#[derive(Clone, Copy)]
struct Bound {
    i: usize,
    j: usize,
    k: usize,
}

impl Bound {
    fn eval(self, index: Index) -> Option<usize> {
        match index {
            I => Some(self.i),
            J => Some(self.j),
            K => Some(self.k),
            IMinus1 => self.i.checked_sub(1),
            IPlus1 => Some(self.i + 1),
            JMinus1 => self.j.checked_sub(1),
        }
    }
}

/// Whether the instantiated pattern denotes an existing item. `[↦, i, i]`
/// exists only as an axiom (`i < n`), so it can never be a consequent.
fn well_formed(pattern: Pattern, b: Bound, n: usize, consequent: bool) -> bool {
    let pair = |x: Index, y: Index| Some((b.eval(x)?, b.eval(y)?));
    match pattern {
        Pattern::RightState(x) => b.eval(x).is_some_and(|x| x <= n),
        Pattern::PartialRight(x, y) => pair(x, y).is_some_and(|(x, y)| {
            y <= n && (x < y || (!consequent && x == y && x < n))
        }),
        Pattern::Complete(x, y) | Pattern::PartialLeft(x, y) | Pattern::Mention(x, y) => {
            pair(x, y).is_some_and(|(x, y)| x < y && y <= n)
        }
    }
}

fn side_condition_holds(side: SideCondition, b: Bound) -> bool {
    match side {
        SideCondition::None => true,
        SideCondition::ILessK => b.i < b.k,
        SideCondition::ILessJ => b.i < b.j,
        SideCondition::ILessJMinus1 => b.i + 1 < b.j,
        SideCondition::IPlus2LessJ => b.i + 2 < b.j,
        SideCondition::ILessKLessJ => b.i < b.k && b.k < b.j,
    }
}

fn uses(schema: &RuleSchema, var: Index) -> bool {
    let mentions = |p: &Pattern| {
        let (x, y) = match *p {
            Pattern::RightState(x) => (x, x),
            Pattern::PartialRight(x, y)
            | Pattern::Complete(x, y)
            | Pattern::PartialLeft(x, y)
            | Pattern::Mention(x, y) => (x, y),
        };
        let base = |ix: Index| match ix {
            I | IMinus1 | IPlus1 => I,
            J | JMinus1 => J,
            K => K,
        };
        base(x) == var || base(y) == var
    };
    schema.antecedents.iter().chain(core::iter::once(&schema.consequent)).any(mentions)
}

/// Counts every `(rule, index binding)` whose items are well formed and whose
/// side condition holds, by enumerating all bindings of the free variables.
/// Rules with a mention antecedent count once per label.
pub fn enumerate_rule_instances(algorithm: Algorithm, n: usize, num_labels: usize) -> InstanceCounts {
    let mut counts = InstanceCounts::default();
    for schema in rule_table(algorithm) {
        let j_range = if uses(schema, J) { 0..=n } else { 0..=0 };
        let k_range = if uses(schema, K) { 0..=n } else { 0..=0 };
        let per_binding = if schema.antecedents.iter().any(|p| matches!(p, Pattern::Mention(..))) {
            num_labels as u64
        } else {
            1
        };
        let mut bindings = 0u64;
        for i in 0..=n {
            for j in j_range.clone() {
                for k in k_range.clone() {
                    let b = Bound { i, j, k };
                    if side_condition_holds(schema.side_condition, b)
                        && well_formed(schema.consequent, b, n, true)
                        && schema.antecedents.iter().all(|p| well_formed(*p, b, n, false))
                    {
                        bindings += 1;
                    }
                }
            }
        }
        counts.add(schema.rule, bindings * per_binding);
    }
    counts
}
