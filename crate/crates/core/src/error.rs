use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {n_rows}x{n_cols} matrix")]
    OutOfBounds { row: usize, col: usize, n_rows: usize, n_cols: usize },
    #[error("pivot at ({row}, {col}) is zero")]
    ZeroPivot { row: usize, col: usize },
    #[error("cannot multiply {left:?} by {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD text at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("edge label {label} occurs {count} times (expected 2)")]
    EdgeMultiplicity { label: u32, count: usize },
    #[error("edge label 0 is not allowed; labels are positive integers")]
    ZeroLabel,
    #[error("inconsistent over/under structure: {0}")]
    Inconsistent(String),
    #[error("component index {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("PD code is not planar: {faces} faces where {expected} are needed")]
    NonPlanar { faces: usize, expected: usize },
    #[error("linking number of a component with itself is not defined")]
    SelfLinking,
    #[error("expected a knot diagram, found {0} components")]
    NotAKnot(usize),
    #[error("edge {0} is not an edge of the diagram")]
    UnknownEdge(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error("state length {got} does not match {expected} crossings")]
    StateLength { expected: usize, got: usize },
    #[error("diagram has {crossings} crossings, above the limit of {limit} for this method")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("resource ceiling exceeded: {live} live generators (ceiling {ceiling}) after {processed} crossings")]
    Ceiling { live: usize, ceiling: usize, processed: usize },
    #[error("tangle boundary of {0} points exceeds the supported maximum of 128")]
    BoundaryTooLarge(usize),
    #[error("morphism entry ({src} -> {tgt}) is not an isomorphism")]
    NotInvertible { src: usize, tgt: usize },
    #[error("empty Khovanov table")]
    EmptyTable,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("hypothesis t <= 2 c+(K) cannot be certified: t = {t}, certified lower bound c+(K) >= {lower}")]
    Hypothesis { t: i64, lower: i64 },
    #[error(transparent)]
    Compute(#[from] ComputeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
