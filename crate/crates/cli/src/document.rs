//! The on-disk evidence format: a JSON document naming the frame, the
//! function kind, and the focal elements. Parsing builds the corresponding
//! library value; serialization canonicalizes (frame labels sorted, set
//! members in frame order, focal elements by ascending cardinality then
//! bit-word value) so equal beliefs produce byte-equal documents.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use emt::{
    BeliefFunction, FrameOfDiscernment, MassFunction, SubsetWord, TargetKind, TransformOptions,
    ViewKind, WeightFunction, WeightKind, ZetaView,
};
use serde::{Deserialize, Serialize};

/// Which set function the document's values describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FunctionKind {
    Mass,
    Commonality,
    Implicability,
    ConjWeight,
    DisjWeight,
}

impl FunctionKind {
    /// The value a set carries when it is not listed: 0 for the additive
    /// kinds, 1 for the multiplicative weights. Listed values must differ
    /// from it.
    pub fn neutral(self) -> f64 {
        match self {
            FunctionKind::Mass | FunctionKind::Commonality | FunctionKind::Implicability => 0.0,
            FunctionKind::ConjWeight | FunctionKind::DisjWeight => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Mass => "mass",
            FunctionKind::Commonality => "commonality",
            FunctionKind::Implicability => "implicability",
            FunctionKind::ConjWeight => "conj_weight",
            FunctionKind::DisjWeight => "disj_weight",
        }
    }

    pub fn target(self) -> TargetKind {
        match self {
            FunctionKind::Mass => TargetKind::Mass,
            FunctionKind::Commonality => TargetKind::Commonality,
            FunctionKind::Implicability => TargetKind::Implicability,
            FunctionKind::ConjWeight => TargetKind::ConjunctiveWeight,
            FunctionKind::DisjWeight => TargetKind::DisjunctiveWeight,
        }
    }

    pub fn of(belief: &BeliefFunction) -> Result<FunctionKind> {
        Ok(match belief {
            BeliefFunction::Mass(_) => FunctionKind::Mass,
            BeliefFunction::View(v) => match v.kind() {
                ViewKind::Commonality => FunctionKind::Commonality,
                ViewKind::Implicability => FunctionKind::Implicability,
                other => bail!("{} views have no document form", other.name()),
            },
            BeliefFunction::Weights(w) => match w.kind() {
                WeightKind::Conjunctive => FunctionKind::ConjWeight,
                WeightKind::Disjunctive => FunctionKind::DisjWeight,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FocalElement {
    pub set: Vec<String>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceDocument {
    pub fod: Vec<String>,
    pub function_kind: FunctionKind,
    pub normalized: bool,
    pub focal_elements: Vec<FocalElement>,
}

impl EvidenceDocument {
    pub fn from_json(text: &str) -> Result<EvidenceDocument> {
        let doc: EvidenceDocument =
            serde_json::from_str(text).context("malformed evidence document")?;
        for element in &doc.focal_elements {
            if element.value == doc.function_kind.neutral() {
                bail!(
                    "focal element {:?} carries the neutral value {} of kind {}",
                    element.set,
                    element.value,
                    doc.function_kind.name()
                );
            }
            if !element.value.is_finite() {
                bail!("focal element {:?} carries a non-finite value", element.set);
            }
        }
        Ok(doc)
    }

    /// One-line JSON with full round-trip precision.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("document serialization");
        text.push('\n');
        text
    }

    /// The frame in the document's own label order.
    pub fn frame(&self) -> Result<Arc<FrameOfDiscernment>> {
        Ok(Arc::new(FrameOfDiscernment::new(
            self.fod.iter().cloned(),
        )?))
    }

    /// Build the library value the document describes. View kinds go through
    /// the structure the options select, so a forced scheme's preconditions
    /// apply here already.
    pub fn to_belief(&self, options: &TransformOptions) -> Result<BeliefFunction> {
        let frame = self.frame()?;
        let mut elements: Vec<(SubsetWord, f64)> = Vec::with_capacity(self.focal_elements.len());
        for element in &self.focal_elements {
            let set = frame
                .subset(element.set.iter().map(String::as_str))
                .with_context(|| format!("focal element {:?}", element.set))?;
            elements.push((set, element.value));
        }
        Ok(match self.function_kind {
            FunctionKind::Mass => BeliefFunction::Mass(MassFunction::new(frame, elements)?),
            FunctionKind::Commonality => BeliefFunction::View(ZetaView::from_entries(
                frame,
                ViewKind::Commonality,
                elements,
                options,
            )?),
            FunctionKind::Implicability => BeliefFunction::View(ZetaView::from_entries(
                frame,
                ViewKind::Implicability,
                elements,
                options,
            )?),
            FunctionKind::ConjWeight => BeliefFunction::Weights(WeightFunction::new(
                frame,
                WeightKind::Conjunctive,
                elements,
            )?),
            FunctionKind::DisjWeight => BeliefFunction::Weights(WeightFunction::new(
                frame,
                WeightKind::Disjunctive,
                elements,
            )?),
        })
    }

    /// Canonical document for a belief: labels sorted, sets remapped to the
    /// sorted frame, elements in canonical set order, neutral values left
    /// out. `normalized` is the caller's claim for kinds that do not carry
    /// it themselves; mass functions override it with their own flag.
    pub fn from_belief(belief: &BeliefFunction, normalized: bool) -> Result<EvidenceDocument> {
        let function_kind = FunctionKind::of(belief)?;
        let (source_frame, entries): (&Arc<FrameOfDiscernment>, Vec<(SubsetWord, f64)>) =
            match belief {
                BeliefFunction::Mass(m) => (m.frame(), m.focal_elements()),
                BeliefFunction::View(v) => {
                    (v.frame(), v.entries().map(|(s, x)| (s.clone(), x)).collect())
                }
                BeliefFunction::Weights(w) => (w.frame(), w.elements()),
            };

        let mut fod: Vec<String> = source_frame.labels().to_vec();
        fod.sort();
        let canonical_frame = Arc::new(FrameOfDiscernment::new(fod.iter().cloned())?);

        let neutral = function_kind.neutral();
        let mut remapped: Vec<(SubsetWord, f64)> = entries
            .into_iter()
            .filter(|(_, v)| *v != neutral)
            .map(|(set, value)| {
                let labels = source_frame.labels_of(&set);
                let word = canonical_frame
                    .subset(labels.iter().map(String::as_str))
                    .expect("labels come from the same frame");
                (word, value)
            })
            .collect();
        remapped.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));

        let normalized = match belief {
            BeliefFunction::Mass(m) => m.is_normalized(),
            _ => normalized,
        };
        Ok(EvidenceDocument {
            fod,
            function_kind,
            normalized,
            focal_elements: remapped
                .into_iter()
                .map(|(set, value)| FocalElement {
                    set: canonical_frame.labels_of(&set),
                    value,
                })
                .collect(),
        })
    }
}
