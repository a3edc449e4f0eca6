use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible")]
    Reducible,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square")]
    NotSquare,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("generators do not span a full lattice")]
    NotFullRank,
    #[error("basis is not reduced (orthogonality defect {0})")]
    NotReduced(i64),
    #[error("algebra has no identity element")]
    NotUnital,
    #[error("promise violation: {0}")]
    PromiseViolation(String),
    #[error("coefficient is not a p^r-th power; the algebra is not a full matrix algebra")]
    RootFailure,
    #[error("trace form is degenerate on the given basis")]
    DegenerateBasis,
    #[error("element is not idempotent modulo the radical")]
    NotIdempotentModRadical,
    #[error("no rank-one idempotent found: the algebra is not split")]
    NotSplit,
    #[error("idempotent does not have rank one (dim Ae = {0})")]
    BadIdempotent(usize),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("could not sample an invertible change of basis")]
    DegenerateSeed,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
