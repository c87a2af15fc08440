//! Dempster-Shafer layer: mass functions, their zeta views (implicability,
//! commonality, and the multiplicative inverses that encode decomposition
//! weights), weight functions, conversions between all of them, and
//! conjunctive fusion through the commonality detour.
//!
//! Every conversion runs on the focal points of the source — the closure of
//! its support under the order's combine operation — never on the full
//! powerset. Views cache the structure analysis so lookups and inverse
//! transforms reuse it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::FrameOfDiscernment;
use crate::kernels::{transform_on_structure, Direction, OpCount, OpKind, TransformSpec};
use crate::structure::{
    analyze, analyze_forced, canonicalize, AnalysisConfig, FamilyIndex, FocalStructure,
    OrderRelation, Scheme,
};
use crate::tree::PowersetTree;
use crate::word::SubsetWord;

/// Two mass vectors within this of each other count as equal; a mass
/// function whose total is within this of 1 counts as normalized.
pub const NORMALIZED_TOL: f64 = 1e-9;

/// Values this close to an operation's neutral element are dropped when a
/// conversion reconstructs a support (Möbius dust removal).
const RECOVERY_PRUNE_EPS: f64 = 1e-12;

/// Which transform algorithm to use for a conversion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SchemeChoice {
    /// Let the structure analysis decide.
    #[default]
    Auto,
    /// Impose a scheme; its preconditions become errors instead of fallbacks.
    Forced(Scheme),
}

/// Options threaded through every conversion entry point.
#[derive(Clone, Copy, Debug, Default)]
pub struct TransformOptions {
    pub scheme: SchemeChoice,
    pub config: AnalysisConfig,
}

fn build_structure(
    support: &[SubsetWord],
    order: OrderRelation,
    options: &TransformOptions,
) -> Result<FocalStructure> {
    match options.scheme {
        SchemeChoice::Auto => Ok(analyze(support, order, &options.config)),
        SchemeChoice::Forced(scheme) => analyze_forced(support, order, scheme),
    }
}

/// A mass function: the frame and a tree of the nonzero masses.
#[derive(Clone, Debug)]
pub struct MassFunction {
    frame: Arc<FrameOfDiscernment>,
    focal: PowersetTree<f64>,
    normalized: bool,
}

impl MassFunction {
    /// Build from focal elements. Sets with value exactly 0 are skipped (the
    /// tree stores the support only); listing the same set twice is an
    /// error, as is ending up with no focal elements at all. The function
    /// counts as normalized when every mass is nonnegative and the total is
    /// 1 within [`NORMALIZED_TOL`].
    pub fn new<I>(frame: Arc<FrameOfDiscernment>, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetWord, f64)>,
    {
        let width = frame.width();
        let mut focal = PowersetTree::new(width);
        let mut seen: Vec<SubsetWord> = Vec::new();
        let mut total = 0.0;
        let mut nonnegative = true;
        for (set, value) in elements {
            if set.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: set.width(),
                });
            }
            if seen.contains(&set) {
                return Err(Error::DuplicateSet(frame.render(&set)));
            }
            seen.push(set.clone());
            if value == 0.0 {
                continue;
            }
            total += value;
            nonnegative &= value >= 0.0;
            focal.insert(set, value);
        }
        if focal.is_empty() {
            return Err(Error::EmptySupport);
        }
        let normalized = nonnegative && (total - 1.0).abs() <= NORMALIZED_TOL;
        Ok(MassFunction {
            frame,
            focal,
            normalized,
        })
    }

    /// The vacuous mass function: all mass on Ω.
    pub fn vacuous(frame: Arc<FrameOfDiscernment>) -> Self {
        let full = frame.full_set();
        let mut focal = PowersetTree::new(frame.width());
        focal.insert(full, 1.0);
        MassFunction {
            frame,
            focal,
            normalized: true,
        }
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    /// Number of focal elements.
    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// The mass of `set`: its stored value, or 0 off the support.
    pub fn value(&self, set: &SubsetWord) -> f64 {
        debug_assert_eq!(set.width(), self.frame.width());
        self.focal.get(set).copied().unwrap_or(0.0)
    }

    /// The support, canonically sorted.
    pub fn support(&self) -> Vec<SubsetWord> {
        canonicalize(&self.focal.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>())
    }

    /// Focal elements in canonical order.
    pub fn focal_elements(&self) -> Vec<(SubsetWord, f64)> {
        let mut out: Vec<(SubsetWord, f64)> =
            self.focal.iter().map(|(s, &v)| (s.clone(), v)).collect();
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        out
    }

    pub fn total(&self) -> f64 {
        self.focal.iter().map(|(_, &v)| v).sum()
    }

    fn zeta_view(&self, kind: ViewKind, options: &TransformOptions) -> Result<ZetaView> {
        let order = kind.order();
        let support = self.support();
        let structure = build_structure(&support, order, options)?;
        let values: Vec<f64> = structure.family.nodes().iter().map(|s| self.value(s)).collect();
        let spec = TransformSpec::zeta(order, OpKind::Additive);
        let (values, ops) = transform_on_structure(&structure, &values, spec)?;
        Ok(ZetaView {
            kind,
            frame: self.frame.clone(),
            structure,
            values,
            spec,
            ops,
        })
    }

    /// The commonality view q(A) = Σ over focal supersets of A.
    pub fn commonality(&self, options: &TransformOptions) -> Result<ZetaView> {
        self.zeta_view(ViewKind::Commonality, options)
    }

    /// The implicability view b(A) = Σ over focal subsets of A.
    pub fn implicability(&self, options: &TransformOptions) -> Result<ZetaView> {
        self.zeta_view(ViewKind::Implicability, options)
    }

    /// pl(A) = b(Ω) − b(Ω∖A), through a fresh implicability view. Derive the
    /// view once with [`MassFunction::implicability`] when querying many sets.
    pub fn plausibility(&self, set: &SubsetWord, options: &TransformOptions) -> Result<f64> {
        self.implicability(options)?.plausibility(set)
    }

    /// Drop focal sets with |mass| < `eps`, then rescale the rest to total
    /// 1. Errors if a surviving mass is negative or nothing survives.
    pub fn prune_and_normalize(&self, eps: f64) -> Result<MassFunction> {
        assert!(eps >= 0.0, "pruning threshold must be nonnegative");
        let mut kept: Vec<(SubsetWord, f64)> = Vec::new();
        for (set, value) in self.focal_elements() {
            if value.abs() < eps {
                continue;
            }
            if value < 0.0 {
                return Err(Error::NegativeValue {
                    set: self.frame.render(&set),
                    value,
                });
            }
            kept.push((set, value));
        }
        if kept.is_empty() {
            return Err(Error::EmptySupport);
        }
        let total: f64 = kept.iter().map(|(_, v)| v).sum();
        if total <= 0.0 {
            return Err(Error::NonPositiveTotal { total });
        }
        for (_, v) in &mut kept {
            *v /= total;
        }
        MassFunction::new(self.frame.clone(), kept)
    }

    /// Evaluate the zeta view for `order` with the boundary shortcut: when
    /// the order's top element (Ω for the superset order, ∅ for the subset
    /// order) carries mass, the closure and the kernel run on the support
    /// *without* it, and its mass — which the zeta adds to every set — is
    /// folded in afterwards. The result is the same view the plain
    /// derivation produces, usually from a smaller closure. Without mass on
    /// the top element this is a plain derivation.
    pub fn boundary_trick(
        &self,
        order: OrderRelation,
        options: &TransformOptions,
    ) -> Result<ZetaView> {
        let kind = match order {
            OrderRelation::SupersetOf => ViewKind::Commonality,
            OrderRelation::SubsetOf => ViewKind::Implicability,
        };
        let top = match order {
            OrderRelation::SupersetOf => self.frame.full_set(),
            OrderRelation::SubsetOf => self.frame.empty_set(),
        };
        let top_mass = self.value(&top);
        let rest: Vec<(SubsetWord, f64)> = self
            .focal_elements()
            .into_iter()
            .filter(|(s, _)| s != &top)
            .collect();
        if top_mass == 0.0 || rest.is_empty() {
            return self.zeta_view(kind, options);
        }

        let rest_support: Vec<SubsetWord> = rest.iter().map(|(s, _)| s.clone()).collect();
        let inner = build_structure(&rest_support, order, options)?;
        let inner_values: Vec<f64> = inner
            .family
            .nodes()
            .iter()
            .map(|s| rest.iter().find(|(r, _)| r == s).map_or(0.0, |(_, v)| *v))
            .collect();
        let spec = TransformSpec::zeta(order, OpKind::Additive);
        let (mut inner_out, mut ops) = transform_on_structure(&inner, &inner_values, spec)?;
        for v in &mut inner_out {
            *v += top_mass;
        }
        ops.combines += inner_out.len() as u64;

        // Re-house the values on the family extended by the top element. The
        // extension keeps the family closed (combining with the top is the
        // identity), so lookups and the inverse transform still work.
        let mut combined_sets = inner.family.nodes().to_vec();
        combined_sets.push(top.clone());
        let combined = crate::structure::FamilyIndex::from_sets(self.frame.width(), &combined_sets);
        let values: Vec<f64> = combined
            .nodes()
            .iter()
            .map(|s| {
                if s == &top {
                    top_mass
                } else {
                    inner_out[inner.family.position(s).expect("inner family node")]
                }
            })
            .collect();
        let iota_mode = match order {
            OrderRelation::SupersetOf => crate::structure::IotaOrder::Ascending,
            OrderRelation::SubsetOf => crate::structure::IotaOrder::Descending,
        };
        let iotas = crate::structure::order_iotas(
            &crate::structure::iota_elements(combined.nodes(), order),
            iota_mode,
        );
        let support = self.support();
        let structure = FocalStructure {
            order,
            support: support.clone(),
            family: combined,
            iotas,
            is_consonant: crate::structure::consonance_check(&support).0,
            is_almost_bayesian: crate::structure::linear_closure_analysis(&support, order).1,
            scheme: inner.scheme,
        };
        Ok(ZetaView {
            kind,
            frame: self.frame.clone(),
            structure,
            values,
            spec,
            ops,
        })
    }
}

/// What a [`ZetaView`]'s values mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViewKind {
    /// b(A) = Σ of masses over focal subsets of A.
    Implicability,
    /// q(A) = Σ of masses over focal supersets of A.
    Commonality,
    /// 1/b(A) = ∏ of disjunctive weights over subsets of A.
    DisjunctiveWeightInv,
    /// 1/q(A) = ∏ of conjunctive weights over supersets of A.
    ConjunctiveWeightInv,
}

impl ViewKind {
    pub fn order(self) -> OrderRelation {
        match self {
            ViewKind::Implicability | ViewKind::DisjunctiveWeightInv => OrderRelation::SubsetOf,
            ViewKind::Commonality | ViewKind::ConjunctiveWeightInv => OrderRelation::SupersetOf,
        }
    }

    pub fn op(self) -> OpKind {
        match self {
            ViewKind::Implicability | ViewKind::Commonality => OpKind::Additive,
            ViewKind::DisjunctiveWeightInv | ViewKind::ConjunctiveWeightInv => {
                OpKind::Multiplicative
            }
        }
    }

    /// The value reported for a set no family member covers.
    pub fn neutral(self) -> f64 {
        self.op().neutral()
    }

    pub fn name(self) -> &'static str {
        match self {
            ViewKind::Implicability => "implicability",
            ViewKind::Commonality => "commonality",
            ViewKind::DisjunctiveWeightInv => "disjunctive-weight-inverse",
            ViewKind::ConjunctiveWeightInv => "conjunctive-weight-inverse",
        }
    }
}

/// How a lookup found its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LookupOutcome {
    /// The set is a family member; its stored value was returned.
    Stored,
    /// The value of the smallest covering member (largest covered member for
    /// the subset order) was returned; it equals the set's own value because
    /// no focal set separates the two.
    Proxy,
    /// No family member covers the set; the operation's neutral element was
    /// returned (0 for additive views — no focal set contributes — and 1 for
    /// weight-inverse views).
    DefaultedNoCover,
}

/// A zeta transform of a mass or weight function, materialized on the focal
/// points and ready for point queries anywhere on the powerset.
#[derive(Clone, Debug)]
pub struct ZetaView {
    kind: ViewKind,
    frame: Arc<FrameOfDiscernment>,
    structure: FocalStructure,
    /// Parallel to `structure.family` nodes.
    values: Vec<f64>,
    /// The zeta spec that produces `values` from the Möbius side.
    spec: TransformSpec,
    /// Cost of producing this view.
    ops: OpCount,
}

impl ZetaView {
    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn structure(&self) -> &FocalStructure {
        &self.structure
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spec(&self) -> TransformSpec {
        self.spec
    }

    pub fn op_count(&self) -> OpCount {
        self.ops
    }

    /// Family nodes with their values, in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&SubsetWord, f64)> {
        self.structure
            .family
            .nodes()
            .iter()
            .zip(self.values.iter().copied())
    }

    /// Rebuild an additive view from listed focal-point values — the inverse
    /// of [`ZetaView::entries`]. The listed sets must form a family closed
    /// under the view's combine operation (intersections for commonality,
    /// unions for implicability), which is the shape every serialized view
    /// has; a missing combination is an error naming it. When the structure
    /// the options select keeps exactly that family, the values are adopted
    /// verbatim; a scheme that enlarges the family (the lattice-support
    /// closure can) gets its extra nodes filled in through a Möbius/zeta
    /// round trip over the recovered masses.
    pub fn from_entries<I>(
        frame: Arc<FrameOfDiscernment>,
        kind: ViewKind,
        entries: I,
        options: &TransformOptions,
    ) -> Result<ZetaView>
    where
        I: IntoIterator<Item = (SubsetWord, f64)>,
    {
        if kind.op() != OpKind::Additive {
            return Err(Error::UnsupportedPath {
                from: kind.name(),
                to: "view reconstruction",
            });
        }
        let order = kind.order();
        let width = frame.width();
        let mut listed: Vec<(SubsetWord, f64)> = Vec::new();
        for (set, value) in entries {
            if set.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: set.width(),
                });
            }
            if listed.iter().any(|(s, _)| s == &set) {
                return Err(Error::DuplicateSet(frame.render(&set)));
            }
            listed.push((set, value));
        }
        if listed.is_empty() {
            return Err(Error::EmptySupport);
        }
        let sets: Vec<SubsetWord> = listed.iter().map(|(s, _)| s.clone()).collect();
        let family = FamilyIndex::from_sets(width, &sets);
        for a in family.nodes() {
            for b in family.nodes() {
                let c = order.combine(a, b);
                if family.position(&c).is_none() {
                    return Err(Error::FamilyNotClosed {
                        set: frame.render(&c),
                    });
                }
            }
        }
        let values: Vec<f64> = family
            .nodes()
            .iter()
            .map(|s| {
                listed
                    .iter()
                    .find(|(l, _)| l == s)
                    .map(|(_, v)| *v)
                    .expect("family node comes from the listing")
            })
            .collect();
        let structure = build_structure(&sets, order, options)?;
        let spec = TransformSpec::zeta(order, OpKind::Additive);
        if structure.family.len() == family.len() {
            return Ok(ZetaView {
                kind,
                frame,
                structure,
                values,
                spec,
                ops: OpCount::default(),
            });
        }
        let (masses, mut ops) =
            crate::kernels::order_agnostic_transform(&family, &values, spec.inverse())?;
        let embedded: Vec<f64> = structure
            .family
            .nodes()
            .iter()
            .map(|s| family.position(s).map_or(0.0, |pos| masses[pos]))
            .collect();
        let (values, zeta_ops) = transform_on_structure(&structure, &embedded, spec)?;
        ops.merge(zeta_ops);
        Ok(ZetaView {
            kind,
            frame,
            structure,
            values,
            spec,
            ops,
        })
    }

    /// The view's value at `set`, which may lie anywhere on the powerset.
    pub fn lookup(&self, set: &SubsetWord) -> f64 {
        self.lookup_flagged(set).0
    }

    /// [`ZetaView::lookup`] plus how the answer was found.
    pub fn lookup_flagged(&self, set: &SubsetWord) -> (f64, LookupOutcome) {
        debug_assert_eq!(set.width(), self.frame.width());
        if let Some(pos) = self.structure.family.position(set) {
            return (self.values[pos], LookupOutcome::Stored);
        }
        let hit = match self.spec.order {
            OrderRelation::SupersetOf => self.structure.family.smallest_superset_counted(set).0,
            OrderRelation::SubsetOf => self.structure.family.largest_subset_counted(set).0,
        };
        match hit {
            Some(pos) => (self.values[pos], LookupOutcome::Proxy),
            None => (self.kind.neutral(), LookupOutcome::DefaultedNoCover),
        }
    }

    /// pl(A) = b(Ω) − b(Ω∖A). Only implicability views know this.
    pub fn plausibility(&self, set: &SubsetWord) -> Result<f64> {
        if self.kind != ViewKind::Implicability {
            return Err(Error::UnsupportedPath {
                from: self.kind.name(),
                to: "plausibility",
            });
        }
        let full = self.frame.full_set();
        Ok(self.lookup(&full) - self.lookup(&set.complement()))
    }

    /// The elementwise reciprocal view: commonality ↔ conjunctive-weight
    /// inverse, implicability ↔ disjunctive-weight inverse. Errors if any
    /// family value is 0.
    pub fn reciprocal(&self) -> Result<ZetaView> {
        let kind = match self.kind {
            ViewKind::Commonality => ViewKind::ConjunctiveWeightInv,
            ViewKind::ConjunctiveWeightInv => ViewKind::Commonality,
            ViewKind::Implicability => ViewKind::DisjunctiveWeightInv,
            ViewKind::DisjunctiveWeightInv => ViewKind::Implicability,
        };
        let mut values = Vec::with_capacity(self.values.len());
        for (pos, &v) in self.values.iter().enumerate() {
            if v == 0.0 {
                return Err(Error::MultiplicativeZero {
                    set: self.frame.render(self.structure.family.node(pos)),
                });
            }
            values.push(1.0 / v);
        }
        let mut ops = self.ops;
        ops.combines += values.len() as u64;
        Ok(ZetaView {
            kind,
            frame: self.frame.clone(),
            structure: self.structure.clone(),
            values,
            spec: TransformSpec {
                order: self.spec.order,
                op: match self.spec.op {
                    OpKind::Additive => OpKind::Multiplicative,
                    OpKind::Multiplicative => OpKind::Additive,
                },
                direction: Direction::Zeta,
            },
            ops,
        })
    }

    /// Möbius-invert an additive view back to its mass function, pruning
    /// float dust below 1e−12.
    pub fn to_mass(&self) -> Result<MassFunction> {
        if self.kind.op() != OpKind::Additive {
            return Err(Error::UnsupportedPath {
                from: self.kind.name(),
                to: "mass",
            });
        }
        let (masses, _) = transform_on_structure(&self.structure, &self.values, self.spec.inverse())?;
        let elements: Vec<(SubsetWord, f64)> = self
            .structure
            .family
            .nodes()
            .iter()
            .zip(masses)
            .filter(|(_, v)| v.abs() >= RECOVERY_PRUNE_EPS)
            .map(|(s, v)| (s.clone(), v))
            .collect();
        MassFunction::new(self.frame.clone(), elements)
    }

    /// The canonical decomposition weights behind this view: conjunctive
    /// weights from a commonality view, disjunctive from an implicability
    /// view. Requires the respective boundary (Ω, resp. ∅) among the focal
    /// sets and every view value nonzero.
    pub fn to_weights(&self) -> Result<WeightFunction> {
        let (weight_kind, boundary) = match self.kind {
            ViewKind::Commonality | ViewKind::ConjunctiveWeightInv => {
                (WeightKind::Conjunctive, self.frame.full_set())
            }
            ViewKind::Implicability | ViewKind::DisjunctiveWeightInv => {
                (WeightKind::Disjunctive, self.frame.empty_set())
            }
        };
        if !self.structure.family.contains(&boundary) {
            return Err(Error::MissingBoundary {
                kind: weight_kind.name(),
                set: self.frame.render(&boundary),
            });
        }
        let inverse_view = match self.kind.op() {
            OpKind::Additive => self.reciprocal()?,
            OpKind::Multiplicative => self.clone(),
        };
        let (weights, _) = transform_on_structure(
            &inverse_view.structure,
            &inverse_view.values,
            inverse_view.spec.inverse(),
        )?;
        let elements: Vec<(SubsetWord, f64)> = inverse_view
            .structure
            .family
            .nodes()
            .iter()
            .zip(weights)
            .filter(|(_, w)| (w - 1.0).abs() >= RECOVERY_PRUNE_EPS)
            .map(|(s, w)| (s.clone(), w))
            .collect();
        WeightFunction::new(self.frame.clone(), weight_kind, elements)
    }
}

/// Conjunctive or disjunctive canonical decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Conjunctive,
    Disjunctive,
}

impl WeightKind {
    pub fn order(self) -> OrderRelation {
        match self {
            WeightKind::Conjunctive => OrderRelation::SupersetOf,
            WeightKind::Disjunctive => OrderRelation::SubsetOf,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Conjunctive => "conjunctive",
            WeightKind::Disjunctive => "disjunctive",
        }
    }
}

/// A decomposition-weight function: weight 1 everywhere except the stored
/// sets. An empty store is the vacuous function's decomposition.
#[derive(Clone, Debug)]
pub struct WeightFunction {
    frame: Arc<FrameOfDiscernment>,
    kind: WeightKind,
    weights: PowersetTree<f64>,
}

impl WeightFunction {
    /// Build from the non-1 weights. Sets with weight exactly 1 are skipped;
    /// weight 0 and duplicate sets are errors.
    pub fn new<I>(frame: Arc<FrameOfDiscernment>, kind: WeightKind, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetWord, f64)>,
    {
        let width = frame.width();
        let mut weights = PowersetTree::new(width);
        let mut seen: Vec<SubsetWord> = Vec::new();
        for (set, value) in elements {
            if set.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: set.width(),
                });
            }
            if seen.contains(&set) {
                return Err(Error::DuplicateSet(frame.render(&set)));
            }
            seen.push(set.clone());
            if value == 1.0 {
                continue;
            }
            if value == 0.0 {
                return Err(Error::MultiplicativeZero {
                    set: frame.render(&set),
                });
            }
            weights.insert(set, value);
        }
        Ok(WeightFunction {
            frame,
            kind,
            weights,
        })
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Number of stored (non-1) weights.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The weight of `set`: its stored value, or 1 off the store.
    pub fn value(&self, set: &SubsetWord) -> f64 {
        debug_assert_eq!(set.width(), self.frame.width());
        self.weights.get(set).copied().unwrap_or(1.0)
    }

    /// The stored sets, canonically sorted.
    pub fn support(&self) -> Vec<SubsetWord> {
        canonicalize(&self.weights.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>())
    }

    /// Stored weights in canonical order.
    pub fn elements(&self) -> Vec<(SubsetWord, f64)> {
        let mut out: Vec<(SubsetWord, f64)> =
            self.weights.iter().map(|(s, &v)| (s.clone(), v)).collect();
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        out
    }

    /// The additive view this weight function generates: commonality for
    /// conjunctive weights (q(A) = ∏ over stored supersets of 1/w), dually
    /// implicability for disjunctive ones. The family is the closure of the
    /// stored sets plus the boundary (Ω, resp. ∅), so every lookup is
    /// covered.
    pub fn to_view(&self, options: &TransformOptions) -> Result<ZetaView> {
        let order = self.kind.order();
        let boundary = match self.kind {
            WeightKind::Conjunctive => self.frame.full_set(),
            WeightKind::Disjunctive => self.frame.empty_set(),
        };
        let mut support = self.support();
        support.push(boundary);
        let support = canonicalize(&support);
        let structure = build_structure(&support, order, options)?;
        let base: Vec<f64> = structure.family.nodes().iter().map(|s| self.value(s)).collect();
        let inverse_spec = TransformSpec::zeta(order, OpKind::Multiplicative);
        let (inverse_values, ops) = transform_on_structure(&structure, &base, inverse_spec)?;
        let inverse = ZetaView {
            kind: match self.kind {
                WeightKind::Conjunctive => ViewKind::ConjunctiveWeightInv,
                WeightKind::Disjunctive => ViewKind::DisjunctiveWeightInv,
            },
            frame: self.frame.clone(),
            structure,
            values: inverse_values,
            spec: inverse_spec,
            ops,
        };
        inverse.reciprocal()
    }
}

/// Any of the belief representations [`derive`] moves between.
#[derive(Clone, Debug)]
pub enum BeliefFunction {
    Mass(MassFunction),
    View(ZetaView),
    Weights(WeightFunction),
}

impl BeliefFunction {
    pub fn kind_name(&self) -> &'static str {
        match self {
            BeliefFunction::Mass(_) => "mass",
            BeliefFunction::View(v) => v.kind.name(),
            BeliefFunction::Weights(w) => match w.kind {
                WeightKind::Conjunctive => "conjunctive-weight",
                WeightKind::Disjunctive => "disjunctive-weight",
            },
        }
    }
}

/// What [`derive`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Mass,
    Implicability,
    Commonality,
    ConjunctiveWeight,
    DisjunctiveWeight,
}

impl TargetKind {
    pub fn name(self) -> &'static str {
        match self {
            TargetKind::Mass => "mass",
            TargetKind::Implicability => "implicability",
            TargetKind::Commonality => "commonality",
            TargetKind::ConjunctiveWeight => "conjunctive-weight",
            TargetKind::DisjunctiveWeight => "disjunctive-weight",
        }
    }
}

/// One conversion step between adjacent representations: m↔q, m↔b, q↔w,
/// b↔v (requesting what the source already is returns a copy). Anything
/// else — e.g. disjunctive weights straight to commonality — is an
/// unsupported path; chain the steps through the mass function instead.
pub fn derive(
    source: &BeliefFunction,
    target: TargetKind,
    options: &TransformOptions,
) -> Result<BeliefFunction> {
    use BeliefFunction as B;
    match (source, target) {
        (B::Mass(m), TargetKind::Mass) => Ok(B::Mass(m.clone())),
        (B::Mass(m), TargetKind::Commonality) => Ok(B::View(m.commonality(options)?)),
        (B::Mass(m), TargetKind::Implicability) => Ok(B::View(m.implicability(options)?)),
        (B::View(v), TargetKind::Mass) if v.kind.op() == OpKind::Additive => {
            Ok(B::Mass(v.to_mass()?))
        }
        (B::View(v), TargetKind::Commonality) if v.kind == ViewKind::Commonality => {
            Ok(B::View(v.clone()))
        }
        (B::View(v), TargetKind::Implicability) if v.kind == ViewKind::Implicability => {
            Ok(B::View(v.clone()))
        }
        (B::View(v), TargetKind::ConjunctiveWeight)
            if v.kind.order() == OrderRelation::SupersetOf =>
        {
            Ok(B::Weights(v.to_weights()?))
        }
        (B::View(v), TargetKind::DisjunctiveWeight)
            if v.kind.order() == OrderRelation::SubsetOf =>
        {
            Ok(B::Weights(v.to_weights()?))
        }
        (B::Weights(w), TargetKind::Commonality) if w.kind == WeightKind::Conjunctive => {
            Ok(B::View(w.to_view(options)?))
        }
        (B::Weights(w), TargetKind::Implicability) if w.kind == WeightKind::Disjunctive => {
            Ok(B::View(w.to_view(options)?))
        }
        (B::Weights(w), TargetKind::ConjunctiveWeight) if w.kind == WeightKind::Conjunctive => {
            Ok(B::Weights(w.clone()))
        }
        (B::Weights(w), TargetKind::DisjunctiveWeight) if w.kind == WeightKind::Disjunctive => {
            Ok(B::Weights(w.clone()))
        }
        _ => Err(Error::UnsupportedPath {
            from: source.kind_name(),
            to: target.name(),
        }),
    }
}

/// Conjunctive combination of two mass functions through the commonality
/// detour: q₁₂ = q₁·q₂ on the closure of the united supports, then a Möbius
/// inversion back to masses. With `normalize`, Dempster's rule: the mass on
/// ∅ is removed and the rest rescaled by 1/(1−m(∅)).
pub fn fuse_conjunctive(
    m1: &MassFunction,
    m2: &MassFunction,
    normalize: bool,
    options: &TransformOptions,
) -> Result<MassFunction> {
    if m1.frame.labels() != m2.frame.labels() {
        return Err(Error::FrameMismatch);
    }
    let q1 = m1.commonality(options)?;
    let q2 = m2.commonality(options)?;

    let mut union_support = m1.support();
    union_support.extend(m2.support());
    let union_support = canonicalize(&union_support);
    let structure = build_structure(&union_support, OrderRelation::SupersetOf, options)?;

    let q12: Vec<f64> = structure
        .family
        .nodes()
        .iter()
        .map(|s| q1.lookup(s) * q2.lookup(s))
        .collect();
    let (masses, _) = transform_on_structure(
        &structure,
        &q12,
        TransformSpec::moebius(OrderRelation::SupersetOf, OpKind::Additive),
    )?;

    let mut elements: Vec<(SubsetWord, f64)> = structure
        .family
        .nodes()
        .iter()
        .zip(masses)
        .filter(|(_, v)| v.abs() >= RECOVERY_PRUNE_EPS)
        .map(|(s, v)| (s.clone(), v))
        .collect();

    if normalize {
        let empty = m1.frame.empty_set();
        let conflict = elements
            .iter()
            .find(|(s, _)| s == &empty)
            .map_or(0.0, |(_, v)| *v);
        elements.retain(|(s, _)| s != &empty);
        let remaining = 1.0 - conflict;
        if elements.is_empty() || remaining <= NORMALIZED_TOL {
            return Err(Error::TotalConflict);
        }
        for (_, v) in &mut elements {
            *v /= remaining;
        }
    }
    MassFunction::new(m1.frame.clone(), elements)
}
