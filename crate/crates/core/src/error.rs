use thiserror::Error;

use crate::poset::FaceRef;

/// Errors raised while building or transforming polytopes.
#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("rank must be at least 1, got {0}")]
    BadRank(usize),
    #[error("rank {rank} has no faces")]
    EmptyRank { rank: usize },
    #[error("face ({rank},{face}) covers out-of-range index {index}")]
    CoverOutOfRange { rank: usize, face: usize, index: usize },
    #[error("face ({rank},{face}) covers {count} faces, need at least 2")]
    TooFewCovers { rank: usize, face: usize, count: usize },
    #[error("rank {0} exceeds the configured limit {1}")]
    RankLimit(usize, usize),
    #[error("flag count {0} exceeds the configured limit {1}")]
    FlagLimit(usize, usize),
    #[error("poset fails polytope validation: {0}")]
    NotAPolytope(String),
    #[error("section bounds {lower:?} and {upper:?} are not comparable")]
    IncomparableBounds { lower: FaceRef, upper: FaceRef },
    #[error("section bounds must differ in rank by at least 1")]
    DegenerateSection,
    #[error("flag graph violates {0}")]
    BadFlagGraph(String),
    #[error("operation requires rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("i must be strictly less than j in a section-hereditary query")]
    BadSectionRanks,
    #[error("rank index {0} out of range")]
    RankOutOfRange(usize),
}

/// Errors raised by the presentation pipeline.
#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("presentation has kind {got}, expected {expected}")]
    WrongKind { expected: &'static str, got: &'static str },
    #[error("missing mandatory relator: {0}")]
    MissingRelator(String),
    #[error("coset limit {0} exceeded (raise the limit or the presentation is infinite)")]
    LimitExceeded(usize),
    #[error("declared order {declared} but enumeration found {found}")]
    OrderMismatch { declared: usize, found: usize },
    #[error("group does not satisfy {0}")]
    RelationViolated(String),
    #[error("built flag system is not polytopal: {0}")]
    NotPolytopal(String),
    #[error("{0}")]
    Precondition(String),
}

/// Errors from the file formats and the catalog.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}:{line}: {msg}")]
    Malformed { path: String, line: usize, msg: String },
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("catalog entry '{name}' failed assertion: {msg}")]
    AssertionFailed { name: String, msg: String },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
