use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building frames, families, or transforms.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("frame of discernment needs at least one label")]
    EmptyFrame,

    #[error("duplicate label `{0}` in frame of discernment")]
    DuplicateLabel(String),

    #[error("frame of discernment has {got} labels; at most {max} are supported")]
    FrameTooLarge { got: usize, max: usize },

    #[error("label `{0}` does not belong to the frame of discernment")]
    UnknownLabel(String),

    #[error("set width mismatch: expected {expected} bits, got {got}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("the two functions are defined over different frames of discernment")]
    FrameMismatch,

    #[error("focal sets do not form a chain, so the consonant evaluation does not apply")]
    NotConsonant,

    #[error("family is not closed: {set} is reachable but not a member")]
    FamilyNotClosed { set: String },

    #[error("multiplicative transform needs nonzero values, but {set} maps to zero")]
    MultiplicativeZero { set: String },

    #[error("{kind} weights require {set} to carry mass")]
    MissingBoundary { kind: &'static str, set: String },

    #[error("duplicate focal set {0}")]
    DuplicateSet(String),

    #[error("function has no focal elements")]
    EmptySupport,

    #[error("fusion yields total conflict: all combined mass falls on the empty set")]
    TotalConflict,

    #[error("negative value {value} at {set}; masses must be nonnegative")]
    NegativeValue { set: String, value: f64 },

    #[error("cannot normalize: total focal weight is {total}")]
    NonPositiveTotal { total: f64 },

    #[error("no direct conversion from {from} to {to}")]
    UnsupportedPath {
        from: &'static str,
        to: &'static str,
    },
}
