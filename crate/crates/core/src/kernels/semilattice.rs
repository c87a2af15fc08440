//! Transforms over a family closed under the order's combine operation
//! (intersection-closed for the superset order, union-closed for the subset
//! order). One pass per irreducible element; each pass tries to push every
//! node across that iota, bridging the gap to the nearest family member by a
//! proxy search in the family tree, guarded by a synchronizing condition so
//! that each source reaches each target exactly once across all passes.

use crate::error::Result;
use crate::kernels::{combine_into, Direction, OpCount, TransformSpec};
use crate::structure::{FamilyIndex, OrderRelation};
use crate::word::SubsetWord;

/// Transform values on a combine-closed family.
///
/// `iotas` must be the family's irreducible elements in zeta processing
/// order — ascending cardinality for the superset order, descending for the
/// subset order (the order [`crate::structure::analyze`] records them in).
///
/// Pass `k` of the zeta direction sends, for every node `A` with
/// `B = A ∪ i_k ≠ A` (superset order; `A ∩ i_k` dually), the value of the
/// proxy `X` — the smallest family member containing `B` (the largest
/// contained in `B` dually) — into `A`, provided the synchronizing condition
/// `X ⊆ A ∪ (i_1 ∪ … ∪ i_k)` (dually `X ⊇ A ∩ (i_1 ∩ … ∩ i_k)`) holds. The
/// cumulative sets replay the iotas already processed, which is what makes
/// each source-target pair combine exactly once over the whole run.
///
/// The Möbius direction runs the same passes in reverse order with the
/// inverse operation — including the *same* cumulative set at each pass, so
/// that pass k undoes exactly what pass k of the zeta did. Replaying the
/// accumulation from the opposite end instead would admit source-target
/// pairs twice on families where a later iota re-enables an earlier bridge
/// (see the regression test at the bottom of this file).
///
/// Within one pass, every modified node fails `i_k ≤ A`, while every proxy
/// source contains its `B` and hence `i_k`; sources are therefore fixed
/// points of the pass that reads them and the update is safe in place.
pub fn semilattice_transform(
    family: &FamilyIndex,
    iotas: &[SubsetWord],
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    assert_eq!(family.len(), values.len());
    let mut out = values.to_vec();
    let mut count = OpCount::default();
    if family.len() < 2 || iotas.is_empty() {
        return Ok((out, count));
    }

    // cum[k] = fold of iotas[0..=k] in zeta processing order.
    let mut cum: Vec<SubsetWord> = Vec::with_capacity(iotas.len());
    for i in iotas {
        let next = match (cum.last(), spec.order) {
            (None, _) => i.clone(),
            (Some(prev), OrderRelation::SupersetOf) => prev.union(i),
            (Some(prev), OrderRelation::SubsetOf) => prev.intersection(i),
        };
        cum.push(next);
    }

    let passes: Vec<usize> = match spec.direction {
        Direction::Zeta => (0..iotas.len()).collect(),
        Direction::Moebius => (0..iotas.len()).rev().collect(),
    };
    for k in passes {
        let iota = &iotas[k];
        for a_pos in 0..family.len() {
            let a = family.node(a_pos);
            let b = match spec.order {
                OrderRelation::SupersetOf => a.union(iota),
                OrderRelation::SubsetOf => a.intersection(iota),
            };
            if &b == a {
                continue;
            }
            let (proxy, visited) = match spec.order {
                OrderRelation::SupersetOf => family.smallest_superset_counted(&b),
                OrderRelation::SubsetOf => family.largest_subset_counted(&b),
            };
            count.proxy_visits += visited as u64;
            let Some(x_pos) = proxy else {
                continue;
            };
            let x = family.node(x_pos);
            let in_sync = match spec.order {
                OrderRelation::SupersetOf => x.is_subset_of(&a.union(&cum[k])),
                OrderRelation::SubsetOf => x.is_superset_of(&a.intersection(&cum[k])),
            };
            if !in_sync {
                continue;
            }
            let source = out[x_pos];
            let source_set = x.clone();
            combine_into(&mut out[a_pos], source, spec.op, spec.direction, &source_set)?;
            count.combines += 1;
        }
    }
    Ok((out, count))
}
