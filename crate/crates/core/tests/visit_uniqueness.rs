//! Basis probing: feed each kernel an indicator function (a single 1 among
//! 0s, or a single 2 among 1s for the multiplicative case) and demand the
//! zeta output be *exactly* the indicator of the corresponding cone. The
//! sums and products involved are exact in floating point, so any kernel
//! that skipped a contributor or counted one twice fails on equality, not
//! on tolerance.

use std::collections::BTreeSet;

use emt::structure::{analyze_forced, order_iotas, IotaOrder};
use emt::{
    analyze, consonant_transform, fmt_transform, iota_elements, lattice_support_closure,
    lattice_transform, naive_transform, transform_on_structure, AnalysisConfig, FamilyIndex,
    OpKind, OrderRelation, Scheme, SubsetWord, TransformSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_mask(width: usize, mask: u32) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

fn le(x: &SubsetWord, y: &SubsetWord, order: OrderRelation) -> bool {
    match order {
        OrderRelation::SubsetOf => x.is_subset_of(y),
        OrderRelation::SupersetOf => x.is_superset_of(y),
    }
}

fn probe(op: OpKind, hit: bool) -> f64 {
    match (op, hit) {
        (OpKind::Additive, true) => 1.0,
        (OpKind::Additive, false) => 0.0,
        (OpKind::Multiplicative, true) => 2.0,
        (OpKind::Multiplicative, false) => 1.0,
    }
}

/// Probe every basis vector on a node family and check the zeta output is
/// exactly the cone indicator.
fn check_family(
    nodes: &[SubsetWord],
    order: OrderRelation,
    op: OpKind,
    run: &dyn Fn(&[f64]) -> Vec<f64>,
    label: &str,
) {
    for x_pos in 0..nodes.len() {
        let values: Vec<f64> = (0..nodes.len())
            .map(|pos| probe(op, pos == x_pos))
            .collect();
        let out = run(&values);
        for (y_pos, y) in nodes.iter().enumerate() {
            let want = probe(op, le(&nodes[x_pos], y, order));
            assert!(
                out[y_pos] == want,
                "{label} {order:?} {op:?}: probe {:?} read at {y:?} gave {} not {want}",
                nodes[x_pos],
                out[y_pos]
            );
        }
    }
}

#[test]
fn dense_kernels_touch_exactly_the_cone() {
    for width in 1..=4usize {
        let size = 1usize << width;
        let nodes: Vec<SubsetWord> = (0..size).map(|m| from_mask(width, m as u32)).collect();
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            for op in [OpKind::Additive, OpKind::Multiplicative] {
                let spec = TransformSpec::zeta(order, op);
                check_family(
                    &nodes,
                    order,
                    op,
                    &|values| naive_transform(width, values, spec).unwrap(),
                    "naive",
                );
                check_family(
                    &nodes,
                    order,
                    op,
                    &|values| fmt_transform(width, values, spec).unwrap().0,
                    "fmt",
                );
            }
        }
    }
}

fn check_structure_schemes(support: &[SubsetWord]) {
    let forced = [Scheme::OrderAgnostic, Scheme::Semilattice, Scheme::LatticeSupport];
    for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
        let mut structures = vec![analyze(support, order, &AnalysisConfig::default())];
        for scheme in forced {
            structures.push(analyze_forced(support, order, scheme).unwrap());
        }
        if structures[0].is_consonant {
            structures.push(analyze_forced(support, order, Scheme::Consonant).unwrap());
        }
        for structure in &structures {
            for op in [OpKind::Additive, OpKind::Multiplicative] {
                let spec = TransformSpec::zeta(order, op);
                check_family(
                    structure.family.nodes(),
                    order,
                    op,
                    &|values| {
                        transform_on_structure(structure, values, spec).unwrap().0
                    },
                    structure.scheme.name(),
                );
            }
        }
    }
}

#[test]
fn structure_kernels_touch_exactly_the_cone_exhaustively() {
    // Every nonempty support over a 3-element frame, every scheme.
    let width = 3;
    let all: Vec<SubsetWord> = (0..8).map(|m| from_mask(width, m)).collect();
    for pick in 1u32..256 {
        let support: Vec<SubsetWord> = (0..8)
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| all[i as usize].clone())
            .collect();
        check_structure_schemes(&support);
    }
}

#[test]
fn structure_kernels_touch_exactly_the_cone_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let width = rng.random_range(4..=5);
        let count = rng.random_range(1..=6);
        let mut masks: BTreeSet<u32> = BTreeSet::new();
        while masks.len() < count {
            masks.insert(rng.random_range(0..1u32 << width));
        }
        let support: Vec<SubsetWord> =
            masks.into_iter().map(|m| from_mask(width, m)).collect();
        check_structure_schemes(&support);
    }
}

#[test]
fn lattice_kernel_touches_exactly_the_cone() {
    // The literal arrow-pairing kernel on its own same-oriented closure.
    let width = 3;
    let all: Vec<SubsetWord> = (0..8).map(|m| from_mask(width, m)).collect();
    for pick in 1u32..256 {
        let support: Vec<SubsetWord> = (0..8)
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| all[i as usize].clone())
            .collect();
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let iotas = iota_elements(&support, order);
            let family = FamilyIndex::from_sets(
                width,
                &lattice_support_closure(&iotas, &support, order),
            );
            let mode = match order {
                OrderRelation::SupersetOf => IotaOrder::Ascending,
                OrderRelation::SubsetOf => IotaOrder::Descending,
            };
            let iotas = order_iotas(&iotas, mode);
            for op in [OpKind::Additive, OpKind::Multiplicative] {
                let spec = TransformSpec::zeta(order, op);
                check_family(
                    family.nodes(),
                    order,
                    op,
                    &|values| {
                        lattice_transform(&family, &iotas, values, spec).unwrap().0
                    },
                    "lattice",
                );
            }
        }
    }
}

#[test]
fn consonant_kernel_touches_exactly_the_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let width = rng.random_range(1..=6);
        let mut chain: Vec<SubsetWord> = Vec::new();
        let mut acc = SubsetWord::empty(width);
        if rng.random_bool(0.3) {
            chain.push(acc.clone());
        }
        for i in 0..width {
            acc.insert(i);
            if rng.random_bool(0.5) {
                chain.push(acc.clone());
            }
        }
        if chain.is_empty() {
            chain.push(acc.clone());
        }
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            for op in [OpKind::Additive, OpKind::Multiplicative] {
                let spec = TransformSpec::zeta(order, op);
                check_family(
                    &chain,
                    order,
                    op,
                    &|values| consonant_transform(&chain, values, spec).unwrap().0,
                    "consonant",
                );
            }
        }
    }
}
