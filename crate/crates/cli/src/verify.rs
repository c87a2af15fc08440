//! The `verify` subcommand: recompute every applicable representation with
//! every applicable scheme and sweep the full powerset against a naive
//! definition-based evaluation. The naive pass enumerates all subset pairs,
//! so the frame size is capped (`--max-omega`).

use anyhow::{bail, Result};
use emt::{
    consonance_check, naive_transform, BeliefFunction, OpKind, OrderRelation, SubsetWord,
    TargetKind, TransformOptions, TransformSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pipeline::{run_transform, to_mass, SchemeFlag};

/// One comparison: a representation, a scheme, and the worst deviation seen
/// anywhere on the powerset.
#[derive(Debug)]
pub struct VerifyLine {
    pub kind: &'static str,
    pub scheme: &'static str,
    pub max_dev: f64,
    pub worst_set: String,
    pub pass: bool,
}

impl VerifyLine {
    pub fn render(&self) -> String {
        format!(
            "verify kind={} scheme={} max_dev={:.3e} worst={} {}",
            self.kind,
            self.scheme,
            self.max_dev,
            self.worst_set,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

const ADDITIVE_TOL: f64 = 1e-9;
const WEIGHT_REL_TOL: f64 = 1e-7;

fn from_mask(width: usize, mask: usize) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

fn mask_of(set: &SubsetWord) -> usize {
    set.indices().fold(0usize, |acc, i| acc | 1 << i)
}

/// Dense reference weights: reciprocal of the dense zeta view followed by a
/// naive multiplicative Möbius pass; `None` when some view value is zero
/// (the decomposition does not exist without its boundary mass).
fn reference_weights(width: usize, dense_view: &[f64], order: OrderRelation) -> Option<Vec<f64>> {
    if dense_view.iter().any(|&v| v == 0.0) {
        return None;
    }
    let recip: Vec<f64> = dense_view.iter().map(|v| 1.0 / v).collect();
    naive_transform(
        width,
        &recip,
        TransformSpec::moebius(order, OpKind::Multiplicative),
    )
    .ok()
}

fn sweep(
    width: usize,
    reference: &[f64],
    value_at: &dyn Fn(&SubsetWord) -> f64,
    relative: bool,
) -> (f64, usize) {
    let mut max_dev = 0.0;
    let mut worst = 0;
    for mask in 0..1usize << width {
        let set = from_mask(width, mask);
        let got = value_at(&set);
        let mut dev = (got - reference[mask]).abs();
        if relative {
            dev /= reference[mask].abs().max(1.0);
        }
        if dev > max_dev {
            max_dev = dev;
            worst = mask;
        }
    }
    (max_dev, worst)
}

/// Run the whole comparison matrix. Returns the report lines; the overall
/// verdict is `lines.iter().all(|l| l.pass)`.
pub fn run_verify(
    source: &BeliefFunction,
    max_omega: usize,
    inject_fault: bool,
    seed: u64,
) -> Result<Vec<VerifyLine>> {
    let options = TransformOptions::default();
    let m = to_mass(source, &options)?;
    let frame = m.frame().clone();
    let width = frame.width();
    if width > max_omega {
        bail!(
            "frame too large for the oracle: |Ω| = {width} exceeds the limit {max_omega} \
             (raise --max-omega to override)"
        );
    }

    let mut dense_m = vec![0.0; 1 << width];
    for (set, value) in m.focal_elements() {
        dense_m[mask_of(&set)] = value;
    }
    let mut reference_q = naive_transform(
        width,
        &dense_m,
        TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive),
    )?;
    let mut reference_b = naive_transform(
        width,
        &dense_m,
        TransformSpec::zeta(OrderRelation::SubsetOf, OpKind::Additive),
    )?;
    let mut reference_w = reference_weights(width, &reference_q, OrderRelation::SupersetOf);
    let mut reference_v = reference_weights(width, &reference_b, OrderRelation::SubsetOf);

    if inject_fault {
        // Negative control: corrupt one reference cell so every comparison
        // must fail and name that cell. A harness that still reports green
        // here is not comparing anything.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = rng.random_range(0..1usize << width);
        reference_q[mask] += 1e-3;
        reference_b[mask] += 1e-3;
        if let Some(w) = reference_w.as_mut() {
            w[mask] += 1e-3;
        }
        if let Some(v) = reference_v.as_mut() {
            v[mask] += 1e-3;
        }
    }

    let (consonant, _) = consonance_check(&m.support());
    let mut schemes = vec![SchemeFlag::Auto];
    if consonant {
        schemes.push(SchemeFlag::Consonant);
    }
    schemes.extend([
        SchemeFlag::Semilattice,
        SchemeFlag::Lattice,
        SchemeFlag::Agnostic,
        SchemeFlag::Fmt,
    ]);

    let source = BeliefFunction::Mass(m.clone());
    let mut lines = Vec::new();
    for &scheme in &schemes {
        for (kind, target, reference, relative) in [
            (
                "commonality",
                TargetKind::Commonality,
                Some(&reference_q),
                false,
            ),
            (
                "implicability",
                TargetKind::Implicability,
                Some(&reference_b),
                false,
            ),
            (
                "conj_weight",
                TargetKind::ConjunctiveWeight,
                reference_w.as_ref(),
                true,
            ),
            (
                "disj_weight",
                TargetKind::DisjunctiveWeight,
                reference_v.as_ref(),
                true,
            ),
        ] {
            let Some(reference) = reference else {
                continue; // decomposition undefined without its boundary mass
            };
            let (belief, _) = run_transform(&source, target, scheme)?;
            let value_at: Box<dyn Fn(&SubsetWord) -> f64> = match belief {
                BeliefFunction::View(view) => Box::new(move |s: &SubsetWord| view.lookup(s)),
                BeliefFunction::Weights(weights) => {
                    Box::new(move |s: &SubsetWord| weights.value(s))
                }
                BeliefFunction::Mass(_) => unreachable!("verify never targets mass"),
            };
            let (max_dev, worst) = sweep(width, reference, value_at.as_ref(), relative);
            let tol = if relative { WEIGHT_REL_TOL } else { ADDITIVE_TOL };
            lines.push(VerifyLine {
                kind,
                scheme: scheme.name(),
                max_dev,
                worst_set: frame.render(&from_mask(width, worst)),
                pass: max_dev <= tol,
            });
        }
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::EvidenceDocument;

    fn m1() -> BeliefFunction {
        EvidenceDocument::from_json(
            r#"{
                "fod": ["a", "b", "c"],
                "function_kind": "mass",
                "normalized": true,
                "focal_elements": [
                    {"set": ["a"], "value": 0.5},
                    {"set": ["a", "b"], "value": 0.3},
                    {"set": ["a", "b", "c"], "value": 0.2}
                ]
            }"#,
        )
        .unwrap()
        .to_belief(&TransformOptions::default())
        .unwrap()
    }

    #[test]
    fn the_chain_example_passes_every_scheme() {
        let lines = run_verify(&m1(), 12, false, 0).unwrap();
        // Consonant support: all six schemes apply; ∅ carries no mass, so
        // the disjunctive column is skipped and q/b/w remain → 3 kinds each.
        assert_eq!(lines.len(), 18);
        for line in &lines {
            assert!(line.pass, "{}", line.render());
            assert!(line.max_dev <= 1e-12, "{}", line.render());
        }
        assert!(lines.iter().any(|l| l.scheme == "consonant"));
        assert!(lines.iter().any(|l| l.scheme == "fmt"));
    }

    #[test]
    fn fault_injection_turns_the_report_red() {
        let lines = run_verify(&m1(), 12, true, 7).unwrap();
        assert!(lines.iter().all(|l| !l.pass));
        // All additive kinds fail at the same corrupted cell.
        let q_line = lines.iter().find(|l| l.kind == "commonality").unwrap();
        let b_line = lines.iter().find(|l| l.kind == "implicability").unwrap();
        assert_eq!(q_line.worst_set, b_line.worst_set);
        assert!(q_line.max_dev > 1e-4);
    }

    #[test]
    fn oversized_frames_are_rejected() {
        let labels: Vec<String> = (0..20).map(|i| format!("e{i:02}")).collect();
        let doc = EvidenceDocument {
            fod: labels.clone(),
            function_kind: crate::document::FunctionKind::Mass,
            normalized: true,
            focal_elements: vec![crate::document::FocalElement {
                set: labels,
                value: 1.0,
            }],
        };
        let belief = doc.to_belief(&TransformOptions::default()).unwrap();
        let err = run_verify(&belief, 12, false, 0).unwrap_err();
        assert!(err.to_string().contains("too large"));
    }
}
