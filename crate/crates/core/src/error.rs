//! Error types shared across the crate.

use std::path::PathBuf;

use crate::setfun::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which partial-order axiom a graph failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderViolation {
    /// Source and target are not the same set.
    NotEndorelation { source: usize, target: usize },
    /// Missing loop (x, x).
    Reflexivity { element: usize },
    /// Both (a, b) and (b, a) present for a != b.
    Antisymmetry { a: usize, b: usize },
    /// (a, b) and (b, c) present but (a, c) missing.
    Transitivity { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderViolation::NotEndorelation { source, target } => write!(
                f,
                "relation must be on a single set (source size {source}, target size {target})"
            ),
            OrderViolation::Reflexivity { element } => {
                write!(f, "reflexivity fails: missing ({element}, {element})")
            }
            OrderViolation::Antisymmetry { a, b } => {
                write!(
                    f,
                    "antisymmetry fails: both ({a}, {b}) and ({b}, {a}) present"
                )
            }
            OrderViolation::Transitivity { a, b, c } => write!(
                f,
                "transitivity fails: ({a}, {b}) and ({b}, {c}) present but ({a}, {c}) missing"
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("frame needs at least one element")]
    EmptyFrame,
    #[error("frame labels must be non-empty strings")]
    EmptyLabel,
    #[error("duplicate frame label {0:?}")]
    DuplicateLabel(String),
    #[error("frame has {n} elements; at most {max} are supported")]
    FrameTooLarge { n: usize, max: usize },
    #[error("label {0:?} is not an element of the frame")]
    UnknownLabel(String),
    #[error("label {0:?} listed more than once")]
    DuplicateMember(String),
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value at index {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("set functions live on different frames")]
    FrameMismatch,
    #[error("expected a {expected} function, got {found}")]
    KindMismatch { expected: Kind, found: Kind },
    #[error("index {index} out of range for a set of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("graphs do not queue: target size {left} vs source size {right}")]
    SetMismatch { left: usize, right: usize },
    #[error("stage {position}: target size {expected} does not match next source size {found}")]
    StageMismatch {
        position: usize,
        expected: usize,
        found: usize,
    },
    #[error("a pipeline needs at least one stage")]
    EmptyPipeline,
    #[error("operation requires plain (unweighted) graph stages")]
    PlainStagesRequired,
    #[error("not a partial order: {0}")]
    NotPartialOrder(OrderViolation),
    #[error("invalid mass function: {0}")]
    InvalidMass(String),
    #[error("total conflict: the combined mass sits entirely on the empty set")]
    TotalConflict,
    #[error("frame of {n} elements exceeds the configured cap of {max}")]
    CapacityExceeded { n: usize, max: usize },
    #[error("bad subset key {key:?}: {source}")]
    BadKey {
        key: String,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid set-function file: {0}")]
    BadFile(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's diagnostic prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyFrame
            | Error::EmptyLabel
            | Error::DuplicateLabel(_)
            | Error::FrameTooLarge { .. } => "bad-frame",
            Error::UnknownLabel(_) | Error::DuplicateMember(_) => "bad-label",
            Error::LengthMismatch { .. } | Error::NonFiniteValue { .. } => "bad-values",
            Error::FrameMismatch => "frame-mismatch",
            Error::KindMismatch { .. } => "kind-mismatch",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::SetMismatch { .. } | Error::StageMismatch { .. } => "set-mismatch",
            Error::EmptyPipeline | Error::PlainStagesRequired => "bad-pipeline",
            Error::NotPartialOrder(_) => "not-a-partial-order",
            Error::InvalidMass(_) => "invalid-mass",
            Error::TotalConflict => "total-conflict",
            Error::CapacityExceeded { .. } => "capacity",
            Error::BadKey { .. } | Error::BadFile(_) => "parse",
            Error::Io { .. } => "io",
            Error::Json { .. } => "parse",
        }
    }
}
