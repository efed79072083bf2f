use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an N-graded object: numerator valuation {0} is negative")]
    NotNGraded(i64),

    #[error("numerator not normalized: valuation {0}, expected 0")]
    NotNormalized(i64),

    #[error("h-vector needs a nonzero series over (1-z)^d, got {0}")]
    NoHVector(String),

    #[error("grading not rescalable: {0}")]
    NotRescalable(String),

    #[error("incompatible series: {0}")]
    Incompatible(String),

    #[error("invalid ring spec t={t}, n={n}: need 1 <= t <= n-1")]
    InvalidSpec { t: u32, n: u32 },

    #[error("invalid matrix shape {t}x{n}: both sides must be positive")]
    InvalidShape { t: u32, n: u32 },

    #[error("not codimension three: n={n}, t={t} (need n = t+2)")]
    NotCodimThree { t: u32, n: u32 },

    #[error("oracle budget exceeded: reconstruction needs degree {required}, budget is {budget}")]
    BudgetExceeded { required: u32, budget: u32 },

    #[error("closed form requires PTwist case (t even, n = t mod 2); got t={t}, n={n}")]
    NotPTwist { t: u32, n: u32 },

    #[error("inconsistent input series: {0}")]
    InconsistentSeries(String),

    #[error("no semistandard grading for odd t={0}; use oracle Hilbert-function tables instead")]
    NoSemistandardGrading(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not orthogonal")]
    NotOrthogonal,

    #[error("matrix is singular")]
    Singular,

    #[error("invalid prime modulus {0}: need an odd prime below 2^32")]
    InvalidPrime(u64),

    #[error("size guard exceeded: ambient dimension C({vars}-1+{degree}, {vars}-1) = {ambient} > {limit}")]
    AmbientGuard {
        vars: u32,
        degree: u32,
        ambient: u128,
        limit: u128,
    },

    #[error("size guard exceeded: {count} generator multisets in degree {degree} > {limit}")]
    MultisetGuard { degree: u32, count: u128, limit: u128 },

    #[error("dimension or degree bound wrong: implied h_{index} = {value} is nonzero")]
    NonvanishingTail { index: usize, value: String },

    #[error("too few Hilbert function values: have {have}, need {need}")]
    TooFewValues { have: usize, need: usize },

    #[error("Cauchy-Binet factorization failed for columns {0:?}")]
    FactorizationFailed(Vec<usize>),

    #[error("oracle mismatch in degree {degree}: expected {expected}, oracle gave {actual}")]
    OracleMismatch {
        degree: u32,
        expected: String,
        actual: String,
    },
}
