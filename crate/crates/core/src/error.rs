use thiserror::Error;

/// Errors surfaced by the exact engines.
///
/// Invariant violations (`Positivity`, `SignPattern`, `Unitriangular`) mean a
/// mathematical identity the engine is required to enforce failed on concrete
/// data; callers must treat them as fatal rather than recoverable.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("window mismatch: {0} vs {1}")]
    WindowMismatch(usize, usize),
    #[error("images are not a bijection of 1..={0}")]
    NotAPermutation(usize),
    #[error("composition {0:?} does not sum to window {1}")]
    InvalidComposition(Vec<usize>, usize),
    #[error("weight must be dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("reduced-word enumeration exceeded limit {0}")]
    WordLimitExceeded(usize),
    #[error("v is not below w in Bruhat order")]
    NotComparable,
    #[error("basis expansion exceeded total-degree cap {0}")]
    DegreeCapExceeded(u32),
    #[error("malformed multi-index or partition: {0}")]
    MalformedIndex(String),
    #[error("polynomial degree {0} exceeds model bound {1}")]
    DegreeTooLarge(usize, usize),
    #[error("decomposition is not integral at step {0}")]
    NonIntegralDecomposition(usize),
    #[error("positivity violated: coefficient {coeff} at witness {witness}")]
    Positivity { witness: String, coeff: String },
    #[error("sign pattern violated: coefficient {coeff} at witness {witness}")]
    SignPattern { witness: String, coeff: String },
    #[error("operator matrix is not unitriangular at {0}")]
    Unitriangular(String),
    #[error("Hilbert fit did not stabilize after {0} window shifts")]
    UnstableFit(usize),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
