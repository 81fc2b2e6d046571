use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeP(u32),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("modulus {0:?} is irreducible but its root does not generate the multiplicative group")]
    NonPrimitiveModulus(Vec<u32>),
    #[error("invalid field parameters: {0}")]
    InvalidSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("element index {index} out of range for F_{q}")]
    ElementOutOfRange { index: usize, q: usize },
    #[error("polynomials belong to different fields")]
    FieldMismatch,
    #[error("expected degree {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("polynomial is not in normalised degree-7 shape")]
    NotNormalised,
    #[error("characteristic 7 divides the degree; the x^6 coefficient cannot be cleared")]
    CharacteristicSeven,
    #[error("two distinct images passed the canonical-form criteria: {0}")]
    UniquenessViolation(String),
    #[error("no image satisfies the canonical-form criteria: {0}")]
    NoCanonicalImage(String),
    #[error("no family table for q = {0}")]
    UnsupportedOrder(usize),
    #[error("candidate space of {candidates} exceeds the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("family table invalid: {0}")]
    InvalidTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
