use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The factorization ran out of its iteration budget. `remaining` holds the
    /// composite cofactors that could not be split.
    #[error("factorization of {n} incomplete: unsplit cofactors {remaining:?}")]
    IncompleteFactorization { n: BigInt, remaining: Vec<BigInt> },

    #[error("malformed field spec: {0}")]
    MalformedSpec(String),

    #[error("{0} is not a fundamental discriminant")]
    NonFundamental(i64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("enumeration of {estimate} norm evaluations exceeds budget {budget}")]
    BudgetExceeded { estimate: String, budget: u64 },

    #[error("class data rejected: {0}")]
    ClassDataRejected(String),

    #[error("definite quaternion algebra ({0}): only indefinite algebras are in scope")]
    DefiniteAlgebra(String),

    #[error("invalid quaternion discriminant {0}: {1}")]
    InvalidQuaternionDiscriminant(u64, String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
