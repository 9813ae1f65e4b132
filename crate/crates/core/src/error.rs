use thiserror::Error;

/// Errors raised by the petal-projection engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("not a bijection on 1..={n}: {detail}")]
    NotBijection { n: usize, detail: String },
    #[error("even petal count {0}: a petal projection with at least two petals has an odd number of petals")]
    EvenPetalCount(usize),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("strand indices must satisfy i < j (got i = {i}, j = {j})")]
    NotStrictlyOrdered { i: usize, j: usize },
    #[error("petal count {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("petal count {n} exceeds the maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("twist map has length {got}, expected {expected}")]
    TwistLength { expected: usize, got: usize },
    #[error("a Lagrangian petal diagram needs at least one half twist")]
    NoHalfTwist,
    #[error("diagram twists are not the canonical cyclic-ascent placement")]
    NotCanonical,
    #[error("resolution {0} is below the minimum of 16 segments per lobe")]
    InvalidResolution(usize),
    #[error("polyline is not closed (gap {gap:e})")]
    OpenCurve { gap: f64 },
    #[error("zero-length segment at vertex {0}")]
    DegenerateSegment(usize),
    #[error("accumulated turning is not an integer (residue {residue:.4})")]
    NonIntegerTurning { residue: f64 },
    #[error("operation needs a closed diagram, got an open tangle")]
    OpenTangle,
    #[error("tangle was not expanded from this diagram's permutation")]
    TangleMismatch,
    #[error("petal closure produced {0} components, expected 1")]
    ComponentCountNotOne(usize),
    #[error("{count} crossings exceeds the cap of {cap}")]
    TooManyCrossings { count: usize, cap: usize },
    #[error("closure pattern has no adjacent same-side pair")]
    NoAdjacentPair,
    #[error("invalid closure pattern: {0}")]
    InvalidPattern(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
