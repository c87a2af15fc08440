//! Structure analysis against independent, brute-force oracles: closures as
//! pairwise fixpoints, iota elements as the irreducibles of the generated
//! sublattice, and the invariants the lookup layer relies on.

use std::collections::BTreeSet;

use emt::structure::canonicalize;
use emt::{
    analyze, closure, consonance_check, iota_elements, lattice_support_closure,
    linear_closure_analysis, AnalysisConfig, OrderRelation, SubsetWord,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_mask(width: usize, mask: u32) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

fn random_support(rng: &mut ChaCha8Rng, width: usize, count: usize) -> Vec<SubsetWord> {
    let count = count.min(1 << width);
    let mut masks: BTreeSet<u32> = BTreeSet::new();
    while masks.len() < count {
        masks.insert(rng.random_range(0..1u32 << width));
    }
    masks.into_iter().map(|m| from_mask(width, m)).collect()
}

/// Fixpoint of pairwise combination — the definition of the closure.
fn closure_oracle(support: &[SubsetWord], order: OrderRelation) -> Vec<SubsetWord> {
    let mut family: BTreeSet<SubsetWord> = support.iter().cloned().collect();
    loop {
        let members: Vec<SubsetWord> = family.iter().cloned().collect();
        let before = family.len();
        for a in &members {
            for b in &members {
                family.insert(match order {
                    OrderRelation::SupersetOf => a.intersection(b),
                    OrderRelation::SubsetOf => a.union(b),
                });
            }
        }
        if family.len() == before {
            return canonicalize(&family.into_iter().collect::<Vec<_>>());
        }
    }
}

/// The sublattice generated by `support`: fixpoint under both union and
/// intersection.
fn sublattice_oracle(support: &[SubsetWord]) -> Vec<SubsetWord> {
    let mut family: BTreeSet<SubsetWord> = support.iter().cloned().collect();
    loop {
        let members: Vec<SubsetWord> = family.iter().cloned().collect();
        let before = family.len();
        for a in &members {
            for b in &members {
                family.insert(a.intersection(b));
                family.insert(a.union(b));
            }
        }
        if family.len() == before {
            return canonicalize(&family.into_iter().collect::<Vec<_>>());
        }
    }
}

/// Join-irreducibles of the generated sublattice: members that are not the
/// union of the strictly smaller members (the empty union being ∅, the empty
/// set itself is never join-irreducible).
fn join_irreducibles(lattice: &[SubsetWord], width: usize) -> Vec<SubsetWord> {
    lattice
        .iter()
        .filter(|x| {
            let mut below = SubsetWord::empty(width);
            for y in lattice {
                if y.is_subset_of(x) && *y != **x {
                    below.union_assign(y);
                }
            }
            below != **x
        })
        .cloned()
        .collect()
}

/// Meet-irreducibles, dually (the empty intersection being Ω).
fn meet_irreducibles(lattice: &[SubsetWord], width: usize) -> Vec<SubsetWord> {
    lattice
        .iter()
        .filter(|x| {
            let mut above = SubsetWord::full(width);
            for y in lattice {
                if y.is_superset_of(x) && *y != **x {
                    above.intersection_assign(y);
                }
            }
            above != **x
        })
        .cloned()
        .collect()
}

#[test]
fn closure_matches_fixpoint_oracle_exhaustively() {
    // Every nonempty support over a 3-element frame.
    let width = 3;
    let all: Vec<SubsetWord> = (0..8).map(|m| from_mask(width, m)).collect();
    for pick in 1u32..256 {
        let support: Vec<SubsetWord> = (0..8)
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| all[i as usize].clone())
            .collect();
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            assert_eq!(
                closure(&support, order),
                closure_oracle(&support, order),
                "support mask {pick:08b} {order:?}"
            );
        }
    }
}

#[test]
fn closure_matches_fixpoint_oracle_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let width = rng.random_range(4..=8);
        let count = rng.random_range(1..=7);
        let support = random_support(&mut rng, width, count);
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            assert_eq!(closure(&support, order), closure_oracle(&support, order));
        }
    }
}

#[test]
fn iotas_are_the_irreducibles_of_the_generated_sublattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let width = rng.random_range(2..=6);
        let count = rng.random_range(1..=6);
        let support = random_support(&mut rng, width, count);
        let lattice = sublattice_oracle(&support);
        assert_eq!(
            canonicalize(&iota_elements(&support, OrderRelation::SupersetOf)),
            canonicalize(&join_irreducibles(&lattice, width)),
            "{support:?}"
        );
        assert_eq!(
            canonicalize(&iota_elements(&support, OrderRelation::SubsetOf)),
            canonicalize(&meet_irreducibles(&lattice, width)),
            "{support:?}"
        );
    }
}

#[test]
fn per_element_iotas_stay_below_every_containing_member() {
    // ι_ω = ⋂{F ∈ S : ω ∈ F} is contained in every sublattice member that
    // contains ω — the reason iota passes never overshoot.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let width = rng.random_range(2..=6);
        let count = rng.random_range(1..=6);
        let support = random_support(&mut rng, width, count);
        let lattice = sublattice_oracle(&support);
        for omega in 0..width {
            let holders: Vec<&SubsetWord> =
                support.iter().filter(|f| f.bit(omega)).collect();
            if holders.is_empty() {
                continue;
            }
            let mut iota = SubsetWord::full(width);
            for f in &holders {
                iota.intersection_assign(f);
            }
            for y in &lattice {
                if y.bit(omega) {
                    assert!(iota.is_subset_of(y), "ι_{omega} ⊄ {y:?} in {support:?}");
                }
            }
        }
    }
}

#[test]
fn lattice_support_closure_is_a_combining_fixpoint_and_contains_the_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let width = rng.random_range(2..=6);
        let count = rng.random_range(1..=6);
        let support = random_support(&mut rng, width, count);
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let iotas = iota_elements(&support, order);
            let family = lattice_support_closure(&iotas, &support, order);
            for a in &family {
                for i in &iotas {
                    let b = match order {
                        OrderRelation::SupersetOf => a.union(i),
                        OrderRelation::SubsetOf => a.intersection(i),
                    };
                    assert!(family.contains(&b), "{a:?} ∘ {i:?} missing");
                }
            }
            // The family built with the *dual* orientation — what the
            // analysis pairs with this order for lookup safety — contains
            // the order's plain closure: every intersection of support
            // members is reachable by meeting with meet-irreducibles
            // (dually for unions).
            let dual_family = lattice_support_closure(
                &iota_elements(&support, order.dual()),
                &support,
                order.dual(),
            );
            for x in closure_oracle(&support, order) {
                assert!(dual_family.contains(&x), "{x:?} escaped the closure");
            }
        }
    }
}

#[test]
fn linear_flag_implies_the_linear_family_is_the_whole_closure() {
    // Exhaustive over 3-element frames, randomized above that.
    let width = 3;
    let all: Vec<SubsetWord> = (0..8).map(|m| from_mask(width, m)).collect();
    for pick in 1u32..256 {
        let support: Vec<SubsetWord> = (0..8)
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| all[i as usize].clone())
            .collect();
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let (family, linear) = linear_closure_analysis(&support, order);
            if linear {
                assert_eq!(canonicalize(&family), closure_oracle(&support, order));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let width = rng.random_range(4..=8);
        let count = rng.random_range(1..=8);
        let support = random_support(&mut rng, width, count);
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let (family, linear) = linear_closure_analysis(&support, order);
            if linear {
                assert_eq!(canonicalize(&family), closure_oracle(&support, order));
            }
        }
    }
}

#[test]
fn consonance_agrees_with_pairwise_comparability() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..300 {
        let width = rng.random_range(2..=7);
        let count = rng.random_range(1..=6);
        let support = random_support(&mut rng, width, count);
        let brute = support.iter().all(|a| {
            support
                .iter()
                .all(|b| a.is_subset_of(b) || b.is_subset_of(a))
        });
        assert_eq!(consonance_check(&support).0, brute, "{support:?}");
    }
}

#[test]
fn analyzed_families_are_closed_under_the_orders_combine() {
    // The invariant behind proxy lookups: whatever scheme analyze() picks,
    // the family is intersection-closed for the superset order and
    // union-closed for the subset order, and contains the plain closure.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for round in 0..150 {
        let width = rng.random_range(2..=6);
        let count = rng.random_range(1..=6);
        let support = random_support(&mut rng, width, count);
        // Cycle the semilattice threshold so every scheme arm gets hit.
        let config = AnalysisConfig {
            semilattice_factor: if round % 3 == 0 { 0 } else { 10 },
        };
        for order in [OrderRelation::SubsetOf, OrderRelation::SupersetOf] {
            let structure = analyze(&support, order, &config);
            let nodes = structure.family.nodes();
            for a in nodes {
                for b in nodes {
                    let c = match order {
                        OrderRelation::SupersetOf => a.intersection(b),
                        OrderRelation::SubsetOf => a.union(b),
                    };
                    assert!(
                        structure.family.contains(&c),
                        "{:?} not combine-closed under {order:?} ({:?} ∘ {:?})",
                        structure.scheme,
                        a,
                        b
                    );
                }
            }
            for x in closure_oracle(&support, order) {
                assert!(structure.family.contains(&x));
            }
        }
    }
}
