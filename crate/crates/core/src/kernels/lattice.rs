//! Transforms over a lattice-support closure, where the family is closed
//! under combining any member with any iota. Every arrow then lands on a
//! family member directly: the passes need no proxy search and no
//! synchronizing condition.

use crate::error::{Error, Result};
use crate::kernels::{combine_into, Direction, OpCount, TransformSpec};
use crate::structure::{FamilyIndex, OrderRelation};
use crate::word::SubsetWord;

/// Transform values on a family closed under `A ∪ i` for every iota
/// (superset order) or `A ∩ i` (subset order) — the closures
/// [`crate::structure::lattice_support_closure`] builds when fed
/// [`crate::structure::iota_elements`] of the same order.
///
/// `iotas` must be in zeta processing order (ascending cardinality for the
/// superset order, descending for the subset order). Pass `k` combines every
/// node `A` with the member `B = A ∪ i_k` (resp. `A ∩ i_k`) whenever
/// `B ≠ A`; the Möbius direction runs the passes in reverse with the inverse
/// operation. A missing `B` means the precondition was violated and is
/// reported as an error. Within a pass, every source `B` contains (resp. is
/// contained in) `i_k` and is therefore a fixed point of that pass, so the
/// update is safe in place.
pub fn lattice_transform(
    family: &FamilyIndex,
    iotas: &[SubsetWord],
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    assert_eq!(family.len(), values.len());
    let mut out = values.to_vec();
    let mut count = OpCount::default();
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
            let Some(b_pos) = family.position(&b) else {
                return Err(Error::FamilyNotClosed {
                    set: format!("{b:?}"),
                });
            };
            let source = out[b_pos];
            combine_into(&mut out[a_pos], source, spec.op, spec.direction, &b)?;
            count.combines += 1;
        }
    }
    Ok((out, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::naive::{restricted_moebius_oracle, restricted_zeta_oracle};
    use crate::kernels::OpKind;
    use crate::structure::{iota_elements, lattice_support_closure, order_iotas, IotaOrder};

    fn w(width: usize, indices: &[usize]) -> SubsetWord {
        SubsetWord::from_indices(width, indices.iter().copied())
    }

    fn build(
        supp: &[SubsetWord],
        order: OrderRelation,
    ) -> (FamilyIndex, Vec<SubsetWord>) {
        let width = supp[0].width();
        let iotas = iota_elements(supp, order);
        let family = FamilyIndex::from_sets(
            width,
            &lattice_support_closure(&iotas, supp, order),
        );
        let mode = match order {
            OrderRelation::SupersetOf => IotaOrder::Ascending,
            OrderRelation::SubsetOf => IotaOrder::Descending,
        };
        (family, order_iotas(&iotas, mode))
    }

    #[test]
    fn indicator_zeta_marks_exactly_the_upward_cone() {
        // The seven-element join closure generated from ∅ by iotas
        // {a},{d},{c,d,f},Ω: a unit of value at {a} propagates by the
        // subset-order zeta to precisely the members containing {a}.
        let iotas = vec![
            w(6, &[0]),
            w(6, &[3]),
            w(6, &[2, 3, 5]),
            w(6, &[0, 1, 2, 3, 4, 5]),
        ];
        let family_sets =
            lattice_support_closure(&iotas, &[w(6, &[])], OrderRelation::SupersetOf);
        assert_eq!(family_sets.len(), 7);
        // For the subset order the same node set must be union-closed with
        // respect to its own iotas; it is, because it is a full sublattice.
        let family = FamilyIndex::from_sets(6, &family_sets);
        let sub_iotas = order_iotas(
            &iota_elements(&family_sets, OrderRelation::SubsetOf),
            IotaOrder::Descending,
        );
        let mut f = vec![0.0; family.len()];
        f[family.position(&w(6, &[0])).unwrap()] = 1.0;
        let (g, _) = lattice_transform(
            &family,
            &sub_iotas,
            &f,
            TransformSpec::zeta(OrderRelation::SubsetOf, OpKind::Additive),
        )
        .unwrap();
        for (pos, s) in family.nodes().iter().enumerate() {
            let want = if w(6, &[0]).is_subset_of(s) { 1.0 } else { 0.0 };
            assert_eq!(g[pos], want, "at {s:?}");
        }
    }

    #[test]
    fn vacuous_family_is_a_fixed_point() {
        let family = FamilyIndex::from_sets(4, &[w(4, &[0, 1, 2, 3])]);
        let (out, count) = lattice_transform(
            &family,
            &[w(4, &[0, 1, 2, 3])],
            &[1.0],
            TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive),
        )
        .unwrap();
        assert_eq!(out, vec![1.0]);
        assert_eq!(count.combines, 0);
    }

    #[test]
    fn rejects_a_family_missing_an_arrow_target() {
        // {a} ∪ {b} = {a,b} is absent, so the pass must fail loudly.
        let family = FamilyIndex::from_sets(3, &[w(3, &[0]), w(3, &[1])]);
        let err = lattice_transform(
            &family,
            &[w(3, &[0]), w(3, &[1])],
            &[0.5, 0.5],
            TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive),
        )
        .unwrap_err();
        assert!(matches!(err, Error::FamilyNotClosed { .. }));
    }

    #[test]
    fn matches_oracles_and_inverts_on_random_supports() {
        struct XorShift(u64);
        impl XorShift {
            fn next(&mut self) -> u64 {
                let mut x = self.0;
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                self.0 = x;
                x
            }
            fn unit(&mut self) -> f64 {
                (self.next() >> 11) as f64 / (1u64 << 53) as f64
            }
        }
        let mut rng = XorShift(0xfeed);
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            for op in [OpKind::Additive, OpKind::Multiplicative] {
                for _ in 0..25 {
                    let width = 5;
                    let count = 2 + (rng.next() % 4) as usize;
                    let mut supp: Vec<SubsetWord> = Vec::new();
                    while supp.len() < count {
                        let bits = rng.next() & 0x1f;
                        let s = w(
                            width,
                            &(0..width).filter(|&i| bits >> i & 1 == 1).collect::<Vec<_>>(),
                        );
                        if !supp.contains(&s) {
                            supp.push(s);
                        }
                    }
                    let (family, iotas) = build(&supp, order);
                    let f: Vec<f64> = (0..family.len())
                        .map(|_| match op {
                            OpKind::Additive => rng.unit() * 2.0 - 1.0,
                            OpKind::Multiplicative => rng.unit() + 0.5,
                        })
                        .collect();
                    let (zeta, _) =
                        lattice_transform(&family, &iotas, &f, TransformSpec::zeta(order, op))
                            .unwrap();
                    let want = restricted_zeta_oracle(family.nodes(), &f, order, op);
                    for (g, e) in zeta.iter().zip(&want) {
                        assert!((g - e).abs() < 1e-8 * e.abs().max(1.0), "{order:?} {op:?}");
                    }
                    let (moebius, _) =
                        lattice_transform(&family, &iotas, &f, TransformSpec::moebius(order, op))
                            .unwrap();
                    let want = restricted_moebius_oracle(family.nodes(), &f, order, op).unwrap();
                    for (g, e) in moebius.iter().zip(&want) {
                        assert!((g - e).abs() < 1e-8 * e.abs().max(1.0), "{order:?} {op:?}");
                    }
                    let (back, _) =
                        lattice_transform(&family, &iotas, &zeta, TransformSpec::moebius(order, op))
                            .unwrap();
                    for (a, b) in f.iter().zip(&back) {
                        assert!((a - b).abs() < 1e-8, "{order:?} {op:?}");
                    }
                }
            }
        }
    }
}
