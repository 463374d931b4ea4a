use thiserror::Error;

/// Errors raised by group constructions, searches and certificate replay.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("permutation domain is empty")]
    EmptyDomain,

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("generator images do not define a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("image of generator {index} does not lie in the target group")]
    ImageNotInTarget { index: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("size limit exceeded for {what}: {actual} > {limit}")]
    SizeLimitExceeded { what: String, limit: u64, actual: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("q = {0} is excluded: PSL2(q) is solvable for q = 2, 3")]
    ExcludedQ(u64),

    #[error("q = {0} must be odd for this construction")]
    EvenQ(u64),

    #[error("not an exact factorization: {0}")]
    NotExactFactorization(String),

    #[error("group has nontrivial center")]
    CenterNotTrivial,

    #[error("pair of homomorphisms is not fixed point free: {0}")]
    NotFpf(String),

    #[error("congruence modulo Inn(N) fails at generator {generator}")]
    CongruenceFails { generator: usize },

    #[error("subgroup is not regular: {0}")]
    NotRegular(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search exhausted: {0}")]
    Exhausted(String),

    #[error("skew brace axiom violated: {0}")]
    BraceViolation(String),

    #[error("certificate schema: {0}")]
    Schema(String),

    #[error("verification failed [{invariant}]: {detail}")]
    Verification { invariant: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size_limit(what: impl Into<String>, limit: u64, actual: u64) -> Self {
        Error::SizeLimitExceeded {
            what: what.into(),
            limit,
            actual,
        }
    }

    pub fn verification(invariant: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            invariant: invariant.into(),
            detail: detail.into(),
        }
    }
}
