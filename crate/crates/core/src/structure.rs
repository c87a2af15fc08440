//! Structure analysis of a support family: closures under intersection or
//! union (the focal points), irreducible "iota" elements, lattice-support
//! closures, and the decision logic that picks a computation scheme for a
//! given support.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::tree::PowersetTree;
use crate::word::SubsetWord;

/// Which of the two dual orders on the powerset is in force.
///
/// Zeta transforms sum `f` over `{x : x ≤ y}`; with `SubsetOf` that is the
/// subsets of `y` (implicability / disjunctive-weight family), with
/// `SupersetOf` the supersets (commonality / conjunctive-weight family).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderRelation {
    /// `x ≤ y ⇔ x ⊆ y`; families close under union.
    SubsetOf,
    /// `x ≤ y ⇔ x ⊇ y`; families close under intersection.
    SupersetOf,
}

impl OrderRelation {
    /// `x ≤ y` in this order.
    pub fn le(self, x: &SubsetWord, y: &SubsetWord) -> bool {
        match self {
            OrderRelation::SubsetOf => x.is_subset_of(y),
            OrderRelation::SupersetOf => x.is_superset_of(y),
        }
    }

    /// `x < y` in this order.
    pub fn lt(self, x: &SubsetWord, y: &SubsetWord) -> bool {
        x != y && self.le(x, y)
    }

    /// The binary operation that closes a family for this order: union for
    /// `SubsetOf`, intersection for `SupersetOf`.
    pub fn combine(self, a: &SubsetWord, b: &SubsetWord) -> SubsetWord {
        match self {
            OrderRelation::SubsetOf => a.union(b),
            OrderRelation::SupersetOf => a.intersection(b),
        }
    }

    /// The opposite order.
    pub fn dual(self) -> OrderRelation {
        match self {
            OrderRelation::SubsetOf => OrderRelation::SupersetOf,
            OrderRelation::SupersetOf => OrderRelation::SubsetOf,
        }
    }
}

/// Computation scheme selected for a support family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Focal sets form a chain; transforms reduce to linear recurrences.
    Consonant,
    /// Quasi-Bayesian support (closure found by the linear scan); transforms
    /// run as direct double loops over the closure.
    OrderAgnostic,
    /// Closure computed by the generic pairwise algorithm; transforms run
    /// iota pass by iota pass with proxy searches.
    Semilattice,
    /// Support too large for the pairwise closure; a lattice-support closure
    /// is built from the irreducible elements instead.
    LatticeSupport,
}

impl Scheme {
    /// Stable lowercase name, used by the CLI and reports.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Consonant => "consonant",
            Scheme::OrderAgnostic => "agnostic",
            Scheme::Semilattice => "semilattice",
            Scheme::LatticeSupport => "lattice",
        }
    }
}

/// Sort direction for iota sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IotaOrder {
    Ascending,
    Descending,
}

/// Deduplicate and sort a family canonically (cardinality ascending, ties by
/// numeric word value).
pub fn canonicalize(sets: &[SubsetWord]) -> Vec<SubsetWord> {
    let mut out: Vec<SubsetWord> = Vec::with_capacity(sets.len());
    let mut seen: HashSet<SubsetWord> = HashSet::with_capacity(sets.len());
    for s in sets {
        if seen.insert(s.clone()) {
            out.push(s.clone());
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Smallest family containing `support` that is closed under the order's
/// combine operation (intersection for `SupersetOf`, union for `SubsetOf`).
///
/// Incremental construction: each generator is combined with every element
/// discovered so far, appending new results; one pass over the generators
/// reaches the fixpoint because combinations of combinations reduce to
/// combinations of generators. Cost is O(|support| · |closure|) combine
/// operations. The result is canonically sorted.
pub fn closure(support: &[SubsetWord], order: OrderRelation) -> Vec<SubsetWord> {
    assert!(!support.is_empty(), "closure of an empty support");
    let mut family = canonicalize(support);
    let mut seen: HashSet<SubsetWord> = family.iter().cloned().collect();
    let generators = family.clone();
    for (i, g) in generators.iter().enumerate() {
        let mut ii = i + 1;
        while ii < family.len() {
            let combined = order.combine(&family[ii], g);
            if seen.insert(combined.clone()) {
                family.push(combined);
            }
            ii += 1;
        }
    }
    family.sort_by(|a, b| a.canonical_cmp(b));
    family
}

/// Single-pass closure attempt for supports whose pairwise overlaps are
/// trivial (quasi-Bayesian families).
///
/// Scans the support minus the order's top element (`Ω` for `SupersetOf`,
/// `∅` for `SubsetOf`) while maintaining the running union (respectively
/// intersection) of the sets seen so far. For each new set the overlap with
/// that accumulator is examined: an overlap of more than one element
/// (respectively a gap of more than one element) proves the support is not
/// quasi-Bayesian and the scan aborts; an overlap of exactly one element is
/// itself a member of the closure and is appended. The bottom element is
/// appended exactly when it genuinely belongs to the closure, i.e. when the
/// intersection of all scanned sets is empty (dually, their union is full):
/// the meet of any subfamily contains the meet of the whole family, so the
/// whole-family test is necessary and sufficient.
///
/// Returns `(closure, true)` on success — in which case the closure equals
/// [`closure`]'s output exactly — or `(∅, false)` on the first violation
/// (partial output is discarded: it would not be a closed family). The
/// verdict depends on scan order; this scan uses canonical order
/// (cardinality ascending for `SupersetOf`, descending for `SubsetOf`) so
/// results are deterministic. A `false` verdict is conservative: callers
/// fall back to the generic closure.
pub fn linear_closure_analysis(
    support: &[SubsetWord],
    order: OrderRelation,
) -> (Vec<SubsetWord>, bool) {
    assert!(!support.is_empty(), "analysis of an empty support");
    let width = support[0].width();
    let mut scan = canonicalize(support);
    if order == OrderRelation::SubsetOf {
        scan.reverse();
    }
    let top_is_top = |s: &SubsetWord| match order {
        OrderRelation::SupersetOf => s.is_full(),
        OrderRelation::SubsetOf => s.is_empty(),
    };
    let mut out: Vec<SubsetWord> = scan.clone();
    scan.retain(|s| !top_is_top(s));

    // Accumulators over the scanned prefix: `reach` is the union
    // (intersection for ⊆) used for overlap tests; `total` is the combined
    // meet (join for ⊆) deciding whether the bottom element appears.
    let mut reach = SubsetWord::empty(width);
    let mut total = SubsetWord::full(width);
    if order == OrderRelation::SubsetOf {
        std::mem::swap(&mut reach, &mut total);
    }
    for (i, a) in scan.iter().enumerate() {
        if i > 0 {
            match order {
                OrderRelation::SupersetOf => {
                    let overlap = reach.intersection(a);
                    match overlap.cardinality() {
                        0 => {}
                        1 => out.push(overlap),
                        _ => return (Vec::new(), false),
                    }
                }
                OrderRelation::SubsetOf => {
                    let overlap = reach.union(a);
                    match width - overlap.cardinality() {
                        0 => {}
                        1 => out.push(overlap),
                        _ => return (Vec::new(), false),
                    }
                }
            }
        }
        match order {
            OrderRelation::SupersetOf => {
                reach.union_assign(a);
                total.intersection_assign(a);
            }
            OrderRelation::SubsetOf => {
                reach.intersection_assign(a);
                total.union_assign(a);
            }
        }
    }
    if !scan.is_empty() {
        let bottom_reached = match order {
            OrderRelation::SupersetOf => total.is_empty(),
            OrderRelation::SubsetOf => total.is_full(),
        };
        if bottom_reached {
            out.push(match order {
                OrderRelation::SupersetOf => SubsetWord::empty(width),
                OrderRelation::SubsetOf => SubsetWord::full(width),
            });
        }
    }
    (canonicalize(&out), true)
}

/// Consonance check: true iff the support, sorted by cardinality, forms a
/// strictly nested chain. Returns the verdict together with the canonically
/// sorted support (useful to callers either way). Two distinct sets of equal
/// cardinality are incomparable, so they yield `false`.
pub fn consonance_check(support: &[SubsetWord]) -> (bool, Vec<SubsetWord>) {
    let sorted = canonicalize(support);
    let consonant = sorted
        .windows(2)
        .all(|w| w[0].is_subset_of(&w[1]) && w[0] != w[1]);
    (consonant, sorted)
}

/// Irreducible elements of the sublattice generated by `support`.
///
/// For `SupersetOf` these are the union-irreducible elements ι: for each
/// ground element ω covered by at least one support set, the intersection of
/// every support set containing ω. For `SubsetOf` they are the dual,
/// intersection-irreducible elements ῑ: for each ω, the union of every
/// support set avoiding ω, emitted whenever at least one such set exists
/// (even when that union is trivial). Duplicates are removed; the result is
/// canonically sorted. Cost is O(|Ω| · |support|) word operations.
pub fn iota_elements(support: &[SubsetWord], order: OrderRelation) -> Vec<SubsetWord> {
    assert!(!support.is_empty(), "iota elements of an empty support");
    let width = support[0].width();
    let mut out: Vec<SubsetWord> = Vec::new();
    let mut seen: HashSet<SubsetWord> = HashSet::new();
    for omega in 0..width {
        let mut included = false;
        match order {
            OrderRelation::SupersetOf => {
                let mut i = SubsetWord::full(width);
                let target = SubsetWord::singleton(width, omega);
                for f in support {
                    if f.bit(omega) {
                        included = true;
                        i.intersection_assign(f);
                        if i == target {
                            break;
                        }
                    }
                }
                if included && seen.insert(i.clone()) {
                    out.push(i);
                }
            }
            OrderRelation::SubsetOf => {
                let mut i = SubsetWord::empty(width);
                let mut target = SubsetWord::full(width);
                target.remove(omega);
                for f in support {
                    if !f.bit(omega) {
                        included = true;
                        i.union_assign(f);
                        if i == target {
                            break;
                        }
                    }
                }
                if included && seen.insert(i.clone()) {
                    out.push(i);
                }
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Lattice-support closure: starting from the support, repeatedly add the
/// combination of every present element with every iota — unions for
/// `SupersetOf` (the upward closure) and intersections for `SubsetOf` (the
/// downward closure). One sequential pass per iota reaches the fixpoint:
/// after processing iotas i_1..i_k the family is exactly
/// {A ∘ (any combination of i_1..i_k) : A ∈ support}. The result is
/// canonically sorted; cost is O(|iotas| · |result|) combine operations.
pub fn lattice_support_closure(
    iotas: &[SubsetWord],
    support: &[SubsetWord],
    order: OrderRelation,
) -> Vec<SubsetWord> {
    let mut family = canonicalize(support);
    let mut seen: HashSet<SubsetWord> = family.iter().cloned().collect();
    for i in iotas {
        let mut idx = 0;
        while idx < family.len() {
            let combined = match order {
                OrderRelation::SupersetOf => family[idx].union(i),
                OrderRelation::SubsetOf => family[idx].intersection(i),
            };
            if seen.insert(combined.clone()) {
                family.push(combined);
            }
            idx += 1;
        }
    }
    family.sort_by(|a, b| a.canonical_cmp(b));
    family
}

/// Sort an iota sequence by cardinality (stable; ties broken by numeric word
/// value so output is deterministic). Ascending order guarantees that no
/// earlier element contains a later one, as the pass structure of the
/// kernels requires; descending is the mirror guarantee.
pub fn order_iotas(iotas: &[SubsetWord], mode: IotaOrder) -> Vec<SubsetWord> {
    let mut out = iotas.to_vec();
    match mode {
        IotaOrder::Ascending => out.sort_by(|a, b| a.canonical_cmp(b)),
        IotaOrder::Descending => out.sort_by(|a, b| {
            b.cardinality()
                .cmp(&a.cardinality())
                .then_with(|| a.numeric_cmp(b))
        }),
    }
    out
}

/// A canonically ordered family of sets with a tree index for containment
/// queries. Kernel values are carried in vectors parallel to `nodes`.
#[derive(Clone, Debug)]
pub struct FamilyIndex {
    width: usize,
    nodes: Vec<SubsetWord>,
    tree: PowersetTree<usize>,
}

impl FamilyIndex {
    /// Build from an arbitrary list of sets (deduplicated, canonically
    /// sorted).
    pub fn from_sets(width: usize, sets: &[SubsetWord]) -> Self {
        let nodes = canonicalize(sets);
        debug_assert!(nodes.iter().all(|s| s.width() == width));
        let mut tree = PowersetTree::new(width);
        for (pos, s) in nodes.iter().enumerate() {
            tree.insert(s.clone(), pos);
        }
        FamilyIndex { width, nodes, tree }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, pos: usize) -> &SubsetWord {
        &self.nodes[pos]
    }

    pub fn nodes(&self) -> &[SubsetWord] {
        &self.nodes
    }

    pub fn tree(&self) -> &PowersetTree<usize> {
        &self.tree
    }

    /// Position of `set` in canonical order, if it is a member.
    pub fn position(&self, set: &SubsetWord) -> Option<usize> {
        self.tree.get(set).copied()
    }

    pub fn contains(&self, set: &SubsetWord) -> bool {
        self.tree.contains(set)
    }

    /// Position of the smallest member containing `x`, plus nodes visited.
    pub fn smallest_superset_counted(&self, x: &SubsetWord) -> (Option<usize>, usize) {
        let (hit, visited) = self.tree.smallest_superset_counted(x);
        (hit.map(|(_, &pos)| pos), visited)
    }

    /// Position of the largest member contained in `x`, plus nodes visited.
    pub fn largest_subset_counted(&self, x: &SubsetWord) -> (Option<usize>, usize) {
        let (hit, visited) = self.tree.largest_subset_counted(x);
        (hit.map(|(_, &pos)| pos), visited)
    }
}

/// Tunables for [`analyze`].
#[derive(Clone, Copy, Debug)]
pub struct AnalysisConfig {
    /// Scheme threshold: the pairwise closure is attempted while
    /// |support| ≤ `semilattice_factor` · |Ω|; larger supports switch to the
    /// lattice-support construction.
    pub semilattice_factor: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            semilattice_factor: 10,
        }
    }
}

/// The result of structure analysis: the support, the node family the
/// kernels will run on, the iota sequence in kernel processing order, the
/// structure flags, and the chosen scheme.
#[derive(Clone, Debug)]
pub struct FocalStructure {
    pub order: OrderRelation,
    /// Canonically sorted, deduplicated support.
    pub support: Vec<SubsetWord>,
    /// Node family for the kernels (the closure, or the support itself for
    /// the consonant scheme — a chain is already closed both ways).
    pub family: FamilyIndex,
    /// Irreducible elements of the family, in kernel processing order:
    /// ascending cardinality for `SupersetOf` (union-irreducibles),
    /// descending for `SubsetOf` (intersection-irreducibles).
    pub iotas: Vec<SubsetWord>,
    pub is_consonant: bool,
    pub is_almost_bayesian: bool,
    pub scheme: Scheme,
}

/// Decide how to transform a support family and precompute everything the
/// kernels need.
///
/// Decision order: a chain support selects `Consonant`; otherwise a
/// quasi-Bayesian support (detected by [`linear_closure_analysis`]) selects
/// `OrderAgnostic` with the linear closure; otherwise, while the support is
/// small relative to the frame (|support| ≤ c·|Ω|), `Semilattice` with the
/// pairwise closure; otherwise `LatticeSupport`.
///
/// The `LatticeSupport` family is built with the *dual* orientation — the
/// downward closure (via intersection-irreducibles) for `SupersetOf` and the
/// upward closure for `SubsetOf` — so that the resulting family is closed
/// under the order's combine operation. That keeps every value query
/// answerable by proxy search (the unique covering member exists), which the
/// lookup layer relies on; the family still contains the plain closure, so
/// kernel outputs on it are exact. The kernels then treat it exactly like a
/// semilattice closure.
///
/// Iotas are always recorded, computed from the final family (for a closed
/// family they coincide with the support's iotas) and ordered as the kernels
/// consume them.
pub fn analyze(support: &[SubsetWord], order: OrderRelation, config: &AnalysisConfig) -> FocalStructure {
    assert!(!support.is_empty(), "analysis of an empty support");
    let width = support[0].width();
    let (is_consonant, support) = consonance_check(support);
    let (linear_family, is_almost_bayesian) = linear_closure_analysis(&support, order);

    let (scheme, family_sets) = if is_consonant {
        (Scheme::Consonant, support.clone())
    } else if is_almost_bayesian {
        (Scheme::OrderAgnostic, linear_family)
    } else if support.len() <= config.semilattice_factor * width {
        (Scheme::Semilattice, closure(&support, order))
    } else {
        (Scheme::LatticeSupport, dual_oriented_closure(&support, order))
    };

    finish_structure(
        order,
        support,
        family_sets,
        is_consonant,
        is_almost_bayesian,
        scheme,
    )
}

/// Like [`analyze`], but with the scheme imposed instead of selected.
///
/// Preconditions are checked rather than assumed: forcing `Consonant` on a
/// non-chain support is an error. The other schemes accept any support; they
/// build the same families [`analyze`] would pair them with (the plain
/// closure for `OrderAgnostic` and `Semilattice`, the dual-oriented
/// lattice-support closure for `LatticeSupport`).
pub fn analyze_forced(
    support: &[SubsetWord],
    order: OrderRelation,
    scheme: Scheme,
) -> Result<FocalStructure> {
    assert!(!support.is_empty(), "analysis of an empty support");
    let (is_consonant, support) = consonance_check(support);
    let (_, is_almost_bayesian) = linear_closure_analysis(&support, order);

    let family_sets = match scheme {
        Scheme::Consonant => {
            if !is_consonant {
                return Err(Error::NotConsonant);
            }
            support.clone()
        }
        Scheme::OrderAgnostic | Scheme::Semilattice => closure(&support, order),
        Scheme::LatticeSupport => dual_oriented_closure(&support, order),
    };

    Ok(finish_structure(
        order,
        support,
        family_sets,
        is_consonant,
        is_almost_bayesian,
        scheme,
    ))
}

/// The lattice-support family for lookups: built with the dual orientation
/// so it is closed under the order's own combine operation (see [`analyze`]).
fn dual_oriented_closure(support: &[SubsetWord], order: OrderRelation) -> Vec<SubsetWord> {
    let dual = order.dual();
    let dual_iotas = iota_elements(support, dual);
    lattice_support_closure(&dual_iotas, support, dual)
}

fn finish_structure(
    order: OrderRelation,
    support: Vec<SubsetWord>,
    family_sets: Vec<SubsetWord>,
    is_consonant: bool,
    is_almost_bayesian: bool,
    scheme: Scheme,
) -> FocalStructure {
    let width = support[0].width();
    let family = FamilyIndex::from_sets(width, &family_sets);
    let iota_mode = match order {
        OrderRelation::SupersetOf => IotaOrder::Ascending,
        OrderRelation::SubsetOf => IotaOrder::Descending,
    };
    let iotas = order_iotas(&iota_elements(family.nodes(), order), iota_mode);

    FocalStructure {
        order,
        support,
        family,
        iotas,
        is_consonant,
        is_almost_bayesian,
        scheme,
    }
}
