use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant of a real quadratic field")]
    NotFundamentalDiscriminant(i64),
    #[error("narrow class number of Q(sqrt({d})) is not one: {reason}")]
    NarrowClassNumberNotOne { d: i64, reason: String },
    #[error("element is not totally positive")]
    NotTotallyPositive,
    #[error("zero element has no ideal")]
    ZeroElement,
    #[error("ideal norm {0} exceeds the factoring bound")]
    FactorizationTooLarge(u128),
    #[error("no totally positive generator found within the search bound")]
    GeneratorSearchExhausted,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rational reconstruction unstable: {0}")]
    ReconstructionUnstable(String),
    #[error("zeta cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("Gamma pole: {0}")]
    GammaPole(String),
    #[error("zeta argument {0} is odd or below 2")]
    ZetaArgumentOdd(i64),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(i64, i64),
    #[error("expansions live over different fields")]
    FieldMismatch,
    #[error("requested tolerance unreachable: tail bound {0:e}")]
    TailBoundTooLarge(f64),
    #[error("Eisenstein normalization fit inconsistent: {0}")]
    FitInconsistent(String),
    #[error("numeric cross-check failed: {0}")]
    NumericCrossCheckFailed(String),
    #[error("symmetry violated at {0}")]
    SymmetryViolated(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("span is not Hecke stable: {0}")]
    NotStable(String),
    #[error("polynomial factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("eigenvalue check failed: {0}")]
    EigenvalueCheckFailed(String),
    #[error("missing prime of norm {0}")]
    MissingPrime(u64),
    #[error("region violation: {0}")]
    RegionViolation(String),
    #[error("vector not in span: {0}")]
    NotInSpan(String),
    #[error("grid too sparse: {0}")]
    GridTooSparse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
