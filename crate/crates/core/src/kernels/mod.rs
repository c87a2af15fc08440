//! Transform kernels: five interchangeable ways to evaluate zeta and Möbius
//! transforms of a set function.
//!
//! * [`naive`] — direct evaluation of the defining sums/products; the oracle
//!   the others are tested against.
//! * [`fmt`] — the fast Möbius transform over the full powerset, n passes of
//!   2^(n−1) combines each.
//! * [`consonant`] — linear recurrences along a chain of focal sets.
//! * [`semilattice`] — iota passes over an intersection- or union-closed
//!   family, bridging gaps through proxy searches in the family tree.
//! * [`lattice`] — iota passes over a lattice-support closure, where every
//!   arrow lands on a family member and no proxy search is needed.
//! * [`agnostic`] — direct double loops over the family, independent of the
//!   frame size.
//!
//! All kernels share the same contract: given values on a node family (dense
//! powerset values for `naive`/`fmt`), produce the transformed values on the
//! same family, counting the non-identity combine operations they perform.
//! Zeta and Möbius directions of the same kernel are exact mutual inverses
//! on the kernel's node set.

pub mod agnostic;
pub mod consonant;
pub mod fmt;
pub mod lattice;
pub mod naive;
pub mod semilattice;

pub use agnostic::order_agnostic_transform;
pub use consonant::consonant_transform;
pub use fmt::fmt_transform;
pub use lattice::lattice_transform;
pub use naive::{naive_transform, restricted_moebius_oracle, restricted_zeta_oracle};
pub use semilattice::semilattice_transform;

use crate::error::{Error, Result};
use crate::structure::{FocalStructure, OrderRelation, Scheme};
use crate::word::SubsetWord;

/// Whether values combine by addition (masses, implicabilities,
/// commonalities) or multiplication (decomposition weights).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Additive,
    Multiplicative,
}

impl OpKind {
    /// The value assumed outside a family: 0 for sums, 1 for products.
    pub fn neutral(self) -> f64 {
        match self {
            OpKind::Additive => 0.0,
            OpKind::Multiplicative => 1.0,
        }
    }
}

/// Forward (zeta) or inverse (Möbius) transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Zeta,
    Moebius,
}

/// Full description of one transform: which order relation defines "below",
/// how values combine, and which direction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransformSpec {
    pub order: OrderRelation,
    pub op: OpKind,
    pub direction: Direction,
}

impl TransformSpec {
    pub fn zeta(order: OrderRelation, op: OpKind) -> Self {
        TransformSpec {
            order,
            op,
            direction: Direction::Zeta,
        }
    }

    pub fn moebius(order: OrderRelation, op: OpKind) -> Self {
        TransformSpec {
            order,
            op,
            direction: Direction::Moebius,
        }
    }

    /// The same transform in the opposite direction.
    pub fn inverse(self) -> Self {
        TransformSpec {
            direction: match self.direction {
                Direction::Zeta => Direction::Moebius,
                Direction::Moebius => Direction::Zeta,
            },
            ..self
        }
    }
}

/// Operation counters reported by every kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    /// Non-identity combine operations (additions/subtractions or
    /// multiplications/divisions between two node values).
    pub combines: u64,
    /// Tree nodes visited during proxy searches (the gap-bridging cost of
    /// the semilattice kernel; zero for kernels that never search).
    pub proxy_visits: u64,
}

impl OpCount {
    pub fn merge(&mut self, other: OpCount) {
        self.combines += other.combines;
        self.proxy_visits += other.proxy_visits;
    }
}

/// Fold `source` into `target` in the given direction: zeta applies the op,
/// Möbius applies its inverse. Division by zero is a domain error naming the
/// set whose value was the divisor.
pub(crate) fn combine_into(
    target: &mut f64,
    source: f64,
    op: OpKind,
    direction: Direction,
    source_set: &SubsetWord,
) -> Result<()> {
    match (op, direction) {
        (OpKind::Additive, Direction::Zeta) => *target += source,
        (OpKind::Additive, Direction::Moebius) => *target -= source,
        (OpKind::Multiplicative, Direction::Zeta) => *target *= source,
        (OpKind::Multiplicative, Direction::Moebius) => {
            if source == 0.0 {
                return Err(Error::MultiplicativeZero {
                    set: format!("{source_set:?}"),
                });
            }
            *target /= source;
        }
    }
    Ok(())
}

/// Run the transform the structure analysis selected.
///
/// `values` is parallel to `structure.family` nodes. The `LatticeSupport`
/// scheme runs the semilattice kernel: its family is built closed under the
/// order's combine operation (see [`crate::structure::analyze`]), which is
/// precisely the semilattice kernel's precondition, and keeping the family
/// closed that way is what makes out-of-family lookups exact.
pub fn transform_on_structure(
    structure: &FocalStructure,
    values: &[f64],
    spec: TransformSpec,
) -> Result<(Vec<f64>, OpCount)> {
    debug_assert_eq!(spec.order, structure.order);
    match structure.scheme {
        Scheme::Consonant => consonant_transform(structure.family.nodes(), values, spec),
        Scheme::OrderAgnostic => order_agnostic_transform(&structure.family, values, spec),
        Scheme::Semilattice | Scheme::LatticeSupport => {
            semilattice_transform(&structure.family, &structure.iotas, values, spec)
        }
    }
}
