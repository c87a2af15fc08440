//! Direct evaluation of the transform definitions. These are the reference
//! implementations every other kernel is checked against; they favour
//! obviousness over speed.

use crate::error::{Error, Result};
use crate::kernels::{Direction, OpKind, TransformSpec};
use crate::structure::OrderRelation;
use crate::word::SubsetWord;

/// Largest frame the dense full-powerset evaluators accept. Beyond this the
/// O(4^n) subset-pair sweep is pointless even as an oracle.
pub const MAX_DENSE_WIDTH: usize = 22;

fn word_from_mask(width: usize, mask: u64) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

/// Fold one source value into the accumulator with the signed/inverted
/// weight `sign` (+1 or −1 relative to the direction of the definition):
/// additive transforms add `sign * value`, multiplicative transforms
/// multiply by `value^sign`.
fn fold(acc: &mut f64, value: f64, sign: i64, op: OpKind, width: usize, mask: u64) -> Result<()> {
    match op {
        OpKind::Additive => *acc += value * sign as f64,
        OpKind::Multiplicative => {
            let mut s = sign;
            while s > 0 {
                *acc *= value;
                s -= 1;
            }
            while s < 0 {
                if value == 0.0 {
                    return Err(Error::MultiplicativeZero {
                        set: format!("{:?}", word_from_mask(width, mask)),
                    });
                }
                *acc /= value;
                s += 1;
            }
        }
    }
    Ok(())
}

/// Evaluate the transform definition over the full powerset.
///
/// `values[mask]` is the input at the subset whose members are the set bits
/// of `mask`. Zeta folds every `x ≤ y` into `y`; Möbius folds them weighted
/// by the powerset Möbius function, which alternates sign with the size of
/// the gap between `x` and `y`. Cost is O(3^n) per direction for the
/// additive forms and the same order for the multiplicative ones.
pub fn naive_transform(width: usize, values: &[f64], spec: TransformSpec) -> Result<Vec<f64>> {
    assert!(width <= MAX_DENSE_WIDTH, "frame too large for the dense oracle");
    let size: usize = 1 << width;
    assert_eq!(values.len(), size, "dense value vector has wrong length");
    let full: u64 = (size - 1) as u64;
    let mut out = vec![0.0; size];
    for y in 0..size as u64 {
        let mut acc = values[y as usize];
        // Enumerate strict lower elements x < y: strict subsets of y for
        // the subset order, strict supersets for the superset order
        // (obtained as y ∪ c for non-empty c inside the complement).
        let roam = match spec.order {
            OrderRelation::SubsetOf => y,
            OrderRelation::SupersetOf => full & !y,
        };
        let mut c = roam;
        while c != 0 {
            let x = match spec.order {
                OrderRelation::SubsetOf => y & !c,
                OrderRelation::SupersetOf => y | c,
            };
            let gap = c.count_ones() as i64;
            let sign = match spec.direction {
                Direction::Zeta => 1,
                Direction::Moebius => {
                    if gap % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
            };
            fold(&mut acc, values[x as usize], sign, spec.op, width, x)?;
            c = (c - 1) & roam;
        }
        out[y as usize] = acc;
    }
    Ok(out)
}

/// Zeta transform restricted to an explicit node family: each output is the
/// fold of the input over the family members at or below the target. This is
/// the definition read off directly, with values outside the family equal to
/// the op's neutral element so they contribute nothing.
pub fn restricted_zeta_oracle(
    family: &[SubsetWord],
    values: &[f64],
    order: OrderRelation,
    op: OpKind,
) -> Vec<f64> {
    assert_eq!(family.len(), values.len());
    let mut out = Vec::with_capacity(family.len());
    for y in family {
        let mut acc = op.neutral();
        for (x, v) in family.iter().zip(values) {
            if order.le(x, y) {
                match op {
                    OpKind::Additive => acc += v,
                    OpKind::Multiplicative => acc *= v,
                }
            }
        }
        out.push(acc);
    }
    out
}

/// Möbius transform restricted to an explicit node family, computed from the
/// Möbius function of the family's own order: μ(x,x) = 1 and
/// μ(x,y) = −Σ_{x ≤ z < y} μ(x,z) over family members z. Inverting the
/// restricted zeta requires this poset Möbius function — the powerset's
/// alternating-sign formula only applies when the family is the full
/// powerset. Cost is O(|family|³).
pub fn restricted_moebius_oracle(
    family: &[SubsetWord],
    values: &[f64],
    order: OrderRelation,
    op: OpKind,
) -> Result<Vec<f64>> {
    assert_eq!(family.len(), values.len());
    let n = family.len();
    // mu[x][y] for x ≤ y, built by increasing interval size along a linear
    // extension (canonical order extends ⊆; its reverse extends ⊇).
    let mut mu = vec![vec![0i64; n]; n];
    let mut order_of: Vec<usize> = (0..n).collect();
    order_of.sort_by(|&a, &b| {
        let c = family[a].canonical_cmp(&family[b]);
        match order {
            OrderRelation::SubsetOf => c,
            OrderRelation::SupersetOf => c.reverse(),
        }
    });
    for (xi, &x) in order_of.iter().enumerate() {
        mu[x][x] = 1;
        for &y in order_of.iter().skip(xi + 1) {
            if !order.lt(&family[x], &family[y]) {
                continue;
            }
            let mut acc = 0i64;
            for &z in &order_of {
                if order.le(&family[x], &family[z]) && order.lt(&family[z], &family[y]) {
                    acc += mu[x][z];
                }
            }
            mu[x][y] = -acc;
        }
    }
    let mut out = Vec::with_capacity(n);
    for (yi, y) in family.iter().enumerate() {
        let mut acc = op.neutral();
        for (xi, x) in family.iter().enumerate() {
            if !order.le(x, y) {
                continue;
            }
            let m = mu[xi][yi];
            match op {
                OpKind::Additive => acc += values[xi] * m as f64,
                OpKind::Multiplicative => {
                    let mut s = m;
                    while s > 0 {
                        acc *= values[xi];
                        s -= 1;
                    }
                    while s < 0 {
                        if values[xi] == 0.0 {
                            return Err(Error::MultiplicativeZero {
                                set: format!("{x:?}"),
                            });
                        }
                        acc /= values[xi];
                        s += 1;
                    }
                }
            }
        }
        out.push(acc);
    }
    Ok(out)
}
