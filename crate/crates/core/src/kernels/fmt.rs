//! The fast Möbius transform over the full powerset: one pass per ground
//! element, each pass combining every subset with its neighbour across that
//! element. n·2^(n−1) combines per direction regardless of the support, which
//! is what the focal-point kernels are measured against.

use crate::error::{Error, Result};
use crate::kernels::naive::MAX_DENSE_WIDTH;
use crate::kernels::{Direction, OpCount, OpKind, TransformSpec};
use crate::structure::OrderRelation;
use crate::word::SubsetWord;

/// Run the fast Möbius transform in place over dense powerset values.
///
/// Pass `i` combines each set `y` containing ground element `i` with
/// `y ∖ {i}` (subset order) — dually each `y` avoiding `i` with `y ∪ {i}`
/// (superset order). Zeta applies the op, Möbius its inverse; because each
/// pass touches a disjoint source/target split across element `i`, the
/// passes are independent and the same ascending pass order serves both
/// directions.
pub fn fmt_transform(
    width: usize,
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    assert!(width <= MAX_DENSE_WIDTH, "frame too large for the dense transform");
    let size: usize = 1 << width;
    assert_eq!(values.len(), size, "dense value vector has wrong length");
    let mut out = values.to_vec();
    let mut count = OpCount::default();
    for i in 0..width {
        let bit = 1usize << i;
        for y in 0..size {
            let (target, source) = match spec.order {
                OrderRelation::SubsetOf => (y | bit, y & !bit),
                OrderRelation::SupersetOf => (y & !bit, y | bit),
            };
            if y != target {
                continue;
            }
            let source_val = out[source];
            match (spec.op, spec.direction) {
                (OpKind::Additive, Direction::Zeta) => out[target] += source_val,
                (OpKind::Additive, Direction::Moebius) => out[target] -= source_val,
                (OpKind::Multiplicative, Direction::Zeta) => out[target] *= source_val,
                (OpKind::Multiplicative, Direction::Moebius) => {
                    if source_val == 0.0 {
                        return Err(Error::MultiplicativeZero {
                            set: format!(
                                "{:?}",
                                SubsetWord::from_indices(
                                    width,
                                    (0..width).filter(|&k| source >> k & 1 == 1),
                                )
                            ),
                        });
                    }
                    out[target] /= source_val;
                }
            }
            count.combines += 1;
        }
    }
    Ok((out, count))
}
