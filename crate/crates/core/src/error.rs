use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero generator at index {0}")]
    ZeroGenerator(usize),

    #[error("zero functional at index {0}")]
    ZeroFunctional(usize),

    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),

    #[error("point is not in the cone")]
    NotInCone,

    #[error("element is not in L")]
    NotInL,

    #[error("element is not in K")]
    NotInK,

    #[error("element lies in K, so it detects nothing and optimality is vacuous")]
    ElementInK,

    #[error("no sampled functional is detected by w2")]
    EmptyDetectionSample,

    #[error("face enumeration budget exceeded: {facets} facets (limit {limit})")]
    FacetBudget { facets: usize, limit: usize },

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("not an entanglement witness: {0}")]
    NotWitness(String),

    #[error("separability undecidable for {d1}x{d2} by the partial transpose test")]
    UndecidableDimension { d1: usize, d2: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
