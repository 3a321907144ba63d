use thiserror::Error;

/// Errors produced by braid construction, the singular calculus and the
/// verification layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand count must be at least 2, got {0}")]
    TooFewStrands(usize),
    #[error("orientation string `{0}` must consist of 0s and 1s")]
    BadOrientation(String),
    #[error("orientation length {got} does not match strand count {expected}")]
    OrientationLength { got: usize, expected: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("orientation functions differ")]
    OrientationMismatch,
    #[error("word does not respect the boundary orientation (strand {strand} runs {from} -> {to})")]
    NotOrientable { strand: usize, from: usize, to: usize },
    #[error("operation requires a non-singular word")]
    SingularWord,
    #[error("closure is not a knot ({components} components)")]
    NotKnot { components: usize },
    #[error("word is not a product of double crossings at letter {0}")]
    NotDoubleCrossings(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("permutation image of x differs from that of T")]
    PhiMismatch,
    #[error("invariant degree {degree} exceeds what the move supports (max {max})")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("case exceeds the desk-scale budget: {0}")]
    BudgetExceeded(String),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
