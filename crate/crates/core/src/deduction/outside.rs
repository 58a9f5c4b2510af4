use super::chart::visit_schedule_rev;
use super::{for_each_instance, Algorithm, Chart};
use crate::error::Error;
use crate::semiring::Semiring;
use crate::weights::WeightTable;

/// Outside pass over an inside chart.
///
/// The goal gets `one`; visiting consequents in the exact reverse of the inside
/// schedule, every rule instance adds `outside(c) ⊗ inside(other antecedent)`
/// to each antecedent. Mention axioms receive outside values too, so with
/// [`LogReal`](crate::LogReal) `inside(m) + outside(m) - log Z` is the log
/// marginal of `m`.
pub fn outside<S: Semiring>(
    algorithm: Algorithm,
    weights: &WeightTable,
    inside: &Chart<S>,
) -> Result<Chart<S>, Error> {
    inside.check_matches(algorithm, weights)?;
    let (n, num_labels) = (weights.n(), weights.num_labels());
    let mut out = Chart::<S>::zeroed(algorithm, n, num_labels);
    *out.slot(super::Item::RightState(n)) = S::one();

    visit_schedule_rev(algorithm, n, |item| {
        let outer = out.get(item);
        if outer == S::zero() {
            return;
        }
        for_each_instance(algorithm, num_labels, item, |_, ants| match *ants {
            [a] => {
                let slot = out.slot(a);
                *slot = S::plus(*slot, outer);
            }
            [a, b] => {
                let to_a = S::times(outer, inside.get(b));
                let to_b = S::times(outer, inside.get(a));
                let slot = out.slot(a);
                *slot = S::plus(*slot, to_a);
                let slot = out.slot(b);
                *slot = S::plus(*slot, to_b);
            }
            _ => unreachable!("rules have one or two antecedents"),
        });
    });
    Ok(out)
}
