//! Zeta and Möbius transforms of set functions over a frame of discernment,
//! evaluated either on the full powerset (fast Möbius transform) or on the
//! focal points of the function's support — the closure of the support under
//! intersection or union — which is usually exponentially smaller.
//!
//! On top of the raw transform kernels sits a Dempster-Shafer layer relating
//! mass functions to implicabilities, commonalities, conjunctive and
//! disjunctive weights, and performing conjunctive fusion through the
//! commonality detour.

pub mod dst;
pub mod error;
pub mod frame;
pub mod kernels;
pub mod structure;
pub mod tree;
pub mod word;

pub use dst::{
    derive, fuse_conjunctive, BeliefFunction, LookupOutcome, MassFunction, SchemeChoice,
    TargetKind, TransformOptions, ViewKind, WeightFunction, WeightKind, ZetaView,
};
pub use error::{Error, Result};
pub use frame::{FrameOfDiscernment, MAX_WIDTH};
pub use kernels::{
    consonant_transform, fmt_transform, lattice_transform, naive_transform,
    order_agnostic_transform, restricted_moebius_oracle, restricted_zeta_oracle,
    semilattice_transform, transform_on_structure, Direction, OpCount, OpKind, TransformSpec,
};
pub use structure::{
    analyze, closure, consonance_check, iota_elements, lattice_support_closure,
    linear_closure_analysis, order_iotas, AnalysisConfig, FamilyIndex, FocalStructure, IotaOrder,
    OrderRelation, Scheme,
};
pub use tree::PowersetTree;
pub use word::SubsetWord;
