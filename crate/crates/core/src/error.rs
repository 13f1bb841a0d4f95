use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("quotient requires the second subspace to lie in the first")]
    NotASubspace,

    #[error("algebra has no grading")]
    NoGrading,

    #[error("expected a {expected} algebra")]
    WrongKind { expected: &'static str },

    #[error("invalid algebra table: {0}")]
    InvalidTable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("map is not a derivation: {0}")]
    NotADerivation(String),

    #[error("subspace is not invariant under {0}")]
    NotInvariant(String),

    #[error("cochain is not a cocycle")]
    NotACocycle,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension {dim} exceeds the cap of {cap} for {what}")]
    CapExceeded {
        what: &'static str,
        dim: usize,
        cap: usize,
    },

    #[error("algebra has a nonzero center")]
    NonzeroCenter,

    #[error("element is outside the envelope")]
    OutsideEnvelope,

    #[error("constraint {equation} fails at {witness}")]
    ConstraintViolated { equation: String, witness: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
