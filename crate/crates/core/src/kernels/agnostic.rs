//! Order-agnostic transforms: no structural preconditions on the family
//! beyond membership lookups. Each output folds directly over the comparable
//! family members, so the combine count is quadratic in the worst case but
//! collapses to one combine per node on families whose members are pairwise
//! incomparable apart from a single bottom (or top) element.

use crate::error::Result;
use crate::kernels::{combine_into, Direction, OpCount, TransformSpec};
use crate::structure::{FamilyIndex, OrderRelation};

/// Transform values on an arbitrary family by folding, for every node, over
/// the strictly comparable members found through the membership tree.
///
/// The zeta direction reads the input snapshot, so node order is free. The
/// Möbius direction is triangular: processing nodes in canonical order
/// (ascending for the subset order, descending for the superset order)
/// guarantees every strictly comparable member is already final when it is
/// subtracted, because strict containment implies strictly smaller (resp.
/// larger) cardinality and therefore an earlier canonical position.
pub fn order_agnostic_transform(
    family: &FamilyIndex,
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    assert_eq!(family.len(), values.len());
    let mut out = values.to_vec();
    let mut count = OpCount::default();
    let positions: Vec<usize> = match (spec.direction, spec.order) {
        (Direction::Zeta, _) | (_, OrderRelation::SubsetOf) => (0..family.len()).collect(),
        (Direction::Moebius, OrderRelation::SupersetOf) => (0..family.len()).rev().collect(),
    };
    for y_pos in positions {
        let y = family.node(y_pos).clone();
        let sources: Vec<usize> = match spec.order {
            OrderRelation::SupersetOf => family.tree().supersets_of(&y),
            OrderRelation::SubsetOf => family.tree().subsets_of(&y),
        }
        .into_iter()
        .map(|(_, &pos)| pos)
        .collect();
        for x_pos in sources {
            if x_pos == y_pos {
                continue;
            }
            let source = match spec.direction {
                // Zeta folds the untouched inputs; out[y_pos] still holds
                // values[y_pos] plus already-folded strict sources.
                Direction::Zeta => values[x_pos],
                // Möbius subtracts finalized outputs of strictly smaller
                // (earlier-processed) members.
                Direction::Moebius => out[x_pos],
            };
            let x = family.node(x_pos).clone();
            combine_into(&mut out[y_pos], source, spec.op, spec.direction, &x)?;
            count.combines += 1;
        }
    }
    Ok((out, count))
}
