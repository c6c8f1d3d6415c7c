use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u64, u64),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("algebra validation failed: {0}")]
    Algebra(String),
    #[error("module validation failed: {0}")]
    Module(String),
    #[error("map validation failed: {0}")]
    Map(String),
    #[error("complex validation failed: {0}")]
    Complex(String),
    #[error("diagram validation failed: {0}")]
    Diagram(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear solve failed: {0}")]
    Solve(String),
    #[error("randomized verification budget exhausted: {0}")]
    Unverified(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
