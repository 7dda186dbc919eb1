use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: requested {requested}, cap is {cap}")]
    SizeCapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("degree {0} is outside the supported range 2..=3")]
    DegreeOutOfRange(usize),
    #[error("element {0} is a unit of the premonoid")]
    NotANonUnit(usize),
    #[error("no qualifying split exists for element {element}")]
    HypothesisViolation { element: usize },
    #[error("strict relation has a cycle through element {element}")]
    CycleDetected { element: usize },
    #[error("transformation is not singular")]
    NotSingular,
    #[error("identity is not a valid input here")]
    IdentityInput,
    #[error("transformation is already a quasi-identity")]
    AlreadyIrreducible,
    #[error("matrix is not orthogonal: (f^T f)[{row}][{col}] = {value}")]
    NotOrthogonal {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("invalid monoid table: {0}")]
    InvalidTable(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
