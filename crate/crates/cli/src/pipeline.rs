//! Conversion plumbing: the representation graph is the path
//! w — q — m — b — v, and any conversion walks it edge by edge. The dense
//! `fmt` scheme bypasses the sparse kernels entirely: it evaluates the
//! transform over the whole powerset and projects the result back onto the
//! focal points, which pins down what the sparse schemes must produce.

use std::sync::Arc;

use anyhow::{bail, Result};
use emt::kernels::naive::MAX_DENSE_WIDTH;
use emt::{
    analyze, derive, fmt_transform, AnalysisConfig, BeliefFunction, Error, FrameOfDiscernment,
    MassFunction, OpCount, OpKind, OrderRelation, Scheme, SchemeChoice, SubsetWord, TargetKind,
    TransformOptions, TransformSpec, ViewKind, WeightFunction, WeightKind, ZetaView,
};

/// The `--scheme` flag: the automatic choice, one of the four forced sparse
/// schemes, or the dense fast-Möbius baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "lower")]
pub enum SchemeFlag {
    Auto,
    Consonant,
    Semilattice,
    Lattice,
    Agnostic,
    Fmt,
}

impl SchemeFlag {
    /// Library options for the sparse schemes; `None` means the dense path.
    pub fn options(self) -> Option<TransformOptions> {
        let scheme = match self {
            SchemeFlag::Auto => SchemeChoice::Auto,
            SchemeFlag::Consonant => SchemeChoice::Forced(Scheme::Consonant),
            SchemeFlag::Semilattice => SchemeChoice::Forced(Scheme::Semilattice),
            SchemeFlag::Lattice => SchemeChoice::Forced(Scheme::LatticeSupport),
            SchemeFlag::Agnostic => SchemeChoice::Forced(Scheme::OrderAgnostic),
            SchemeFlag::Fmt => return None,
        };
        Some(TransformOptions {
            scheme,
            ..TransformOptions::default()
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeFlag::Auto => "auto",
            SchemeFlag::Consonant => "consonant",
            SchemeFlag::Semilattice => "semilattice",
            SchemeFlag::Lattice => "lattice",
            SchemeFlag::Agnostic => "agnostic",
            SchemeFlag::Fmt => "fmt",
        }
    }
}

/// One conversion step as reported by `--counts`.
pub struct StepReport {
    pub from: &'static str,
    pub to: &'static str,
    pub scheme: Option<&'static str>,
    pub ops: Option<OpCount>,
}

impl StepReport {
    pub fn render(&self) -> String {
        let mut line = format!("step {} -> {}", self.from, self.to);
        if let Some(scheme) = self.scheme {
            line.push_str(&format!(" scheme={scheme}"));
        }
        if let Some(ops) = self.ops {
            line.push_str(&format!(
                " combines={} proxy_visits={}",
                ops.combines, ops.proxy_visits
            ));
        }
        line
    }
}

fn kind_of(belief: &BeliefFunction) -> TargetKind {
    match belief {
        BeliefFunction::Mass(_) => TargetKind::Mass,
        BeliefFunction::View(v) => match v.kind() {
            ViewKind::Commonality | ViewKind::ConjunctiveWeightInv => TargetKind::Commonality,
            ViewKind::Implicability | ViewKind::DisjunctiveWeightInv => TargetKind::Implicability,
        },
        BeliefFunction::Weights(w) => match w.kind() {
            WeightKind::Conjunctive => TargetKind::ConjunctiveWeight,
            WeightKind::Disjunctive => TargetKind::DisjunctiveWeight,
        },
    }
}

/// Position along the conversion path w — q — m — b — v.
fn path_index(kind: TargetKind) -> usize {
    match kind {
        TargetKind::ConjunctiveWeight => 0,
        TargetKind::Commonality => 1,
        TargetKind::Mass => 2,
        TargetKind::Implicability => 3,
        TargetKind::DisjunctiveWeight => 4,
    }
}

fn kind_at(index: usize) -> TargetKind {
    match index {
        0 => TargetKind::ConjunctiveWeight,
        1 => TargetKind::Commonality,
        2 => TargetKind::Mass,
        3 => TargetKind::Implicability,
        _ => TargetKind::DisjunctiveWeight,
    }
}

fn step_ops(belief: &BeliefFunction) -> (Option<&'static str>, Option<OpCount>) {
    match belief {
        BeliefFunction::View(v) => (
            Some(v.structure().scheme.name()),
            Some(v.op_count()),
        ),
        _ => (None, None),
    }
}

/// Convert along the path, one [`derive`] edge at a time.
pub fn convert(
    source: &BeliefFunction,
    target: TargetKind,
    options: &TransformOptions,
) -> Result<(BeliefFunction, Vec<StepReport>)> {
    let mut here = path_index(kind_of(source));
    let goal = path_index(target);
    let mut current = source.clone();
    let mut steps = Vec::new();
    while here != goal {
        let next = if goal > here { here + 1 } else { here - 1 };
        let next_kind = kind_at(next);
        let from_name = current.kind_name();
        current = derive(&current, next_kind, options)?;
        let (scheme, ops) = step_ops(&current);
        steps.push(StepReport {
            from: from_name,
            to: next_kind.name(),
            scheme,
            ops,
        });
        here = next;
    }
    if steps.is_empty() {
        // Identity conversions still go through derive for its validation.
        current = derive(&current, target, options)?;
    }
    Ok((current, steps))
}

/// Convert any representation to a mass function.
pub fn to_mass(source: &BeliefFunction, options: &TransformOptions) -> Result<MassFunction> {
    let (belief, _) = convert(source, TargetKind::Mass, options)?;
    match belief {
        BeliefFunction::Mass(m) => Ok(m),
        _ => unreachable!("conversion to mass returned a non-mass"),
    }
}

fn mask_of(set: &SubsetWord) -> usize {
    set.indices().fold(0usize, |acc, i| acc | 1 << i)
}

fn dense_of(m: &MassFunction) -> Vec<f64> {
    let mut dense = vec![0.0; 1 << m.frame().width()];
    for (set, value) in m.focal_elements() {
        dense[mask_of(&set)] = value;
    }
    dense
}

fn from_mask(width: usize, mask: usize) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

/// Dense weight vector for the given orientation: reciprocal of the dense
/// zeta view, then a multiplicative Möbius pass over the whole powerset.
fn dense_weights(
    frame: &Arc<FrameOfDiscernment>,
    dense_view: &[f64],
    order: OrderRelation,
    counts: &mut OpCount,
) -> Result<Vec<f64>> {
    let width = frame.width();
    let mut recip = Vec::with_capacity(dense_view.len());
    for (mask, &v) in dense_view.iter().enumerate() {
        if v == 0.0 {
            return Err(Error::MultiplicativeZero {
                set: frame.render(&from_mask(width, mask)),
            }
            .into());
        }
        recip.push(1.0 / v);
    }
    let (weights, ops) = fmt_transform(
        width,
        &recip,
        TransformSpec::moebius(order, OpKind::Multiplicative),
    )?;
    counts.merge(ops);
    Ok(weights)
}

/// The dense conversion: everything goes through a full-powerset mass
/// vector and the fast Möbius transform, and the result is projected back
/// onto the focal points the sparse analysis would use. Only meaningful up
/// to [`MAX_DENSE_WIDTH`].
pub fn convert_dense(
    source: &BeliefFunction,
    target: TargetKind,
) -> Result<(BeliefFunction, Vec<StepReport>)> {
    let options = TransformOptions::default();
    let m = to_mass(source, &options)?;
    let frame = m.frame().clone();
    let width = frame.width();
    if width > MAX_DENSE_WIDTH {
        bail!(
            "frame too large for the dense transform: |Ω| = {width} exceeds {MAX_DENSE_WIDTH}"
        );
    }
    let dense_m = dense_of(&m);
    let mut counts = OpCount::default();

    let belief = match target {
        TargetKind::Mass => BeliefFunction::Mass(m.clone()),
        TargetKind::Commonality | TargetKind::Implicability => {
            let (kind, order) = match target {
                TargetKind::Commonality => (ViewKind::Commonality, OrderRelation::SupersetOf),
                _ => (ViewKind::Implicability, OrderRelation::SubsetOf),
            };
            let (dense, ops) =
                fmt_transform(width, &dense_m, TransformSpec::zeta(order, OpKind::Additive))?;
            counts.merge(ops);
            let structure = analyze(&m.support(), order, &AnalysisConfig::default());
            let entries: Vec<(SubsetWord, f64)> = structure
                .family
                .nodes()
                .iter()
                .map(|s| (s.clone(), dense[mask_of(s)]))
                .collect();
            BeliefFunction::View(ZetaView::from_entries(frame.clone(), kind, entries, &options)?)
        }
        TargetKind::ConjunctiveWeight | TargetKind::DisjunctiveWeight => {
            let (order, weight_kind, boundary_kind, boundary) = match target {
                TargetKind::ConjunctiveWeight => (
                    OrderRelation::SupersetOf,
                    WeightKind::Conjunctive,
                    "conjunctive weights",
                    frame.full_set(),
                ),
                _ => (
                    OrderRelation::SubsetOf,
                    WeightKind::Disjunctive,
                    "disjunctive weights",
                    frame.empty_set(),
                ),
            };
            if m.value(&boundary) == 0.0 {
                return Err(Error::MissingBoundary {
                    kind: boundary_kind,
                    set: frame.render(&boundary),
                }
                .into());
            }
            let (dense_view, ops) =
                fmt_transform(width, &dense_m, TransformSpec::zeta(order, OpKind::Additive))?;
            counts.merge(ops);
            let weights = dense_weights(&frame, &dense_view, order, &mut counts)?;
            let entries: Vec<(SubsetWord, f64)> = weights
                .iter()
                .enumerate()
                .filter(|(_, w)| (**w - 1.0).abs() >= 1e-12)
                .map(|(mask, &w)| (from_mask(width, mask), w))
                .collect();
            BeliefFunction::Weights(WeightFunction::new(frame.clone(), weight_kind, entries)?)
        }
    };

    let steps = vec![StepReport {
        from: source.kind_name(),
        to: target.name(),
        scheme: Some("fmt"),
        ops: Some(counts),
    }];
    Ok((belief, steps))
}

/// Entry point used by the `transform` subcommand.
pub fn run_transform(
    source: &BeliefFunction,
    target: TargetKind,
    scheme: SchemeFlag,
) -> Result<(BeliefFunction, Vec<StepReport>)> {
    match scheme.options() {
        Some(options) => convert(source, target, &options),
        None => convert_dense(source, target),
    }
}
