use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(u32),
    #[error("extension degree {0} is outside 1..=16")]
    DegreeTooLarge(usize),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("bad arguments: {0}")]
    BadArguments(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("too large to enumerate: {0}")]
    TooLargeToEnumerate(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("no constructive route: {0}")]
    ConditionNotMet(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("diagram mismatch: {0}")]
    DiagramMismatch(String),
    #[error("not a constant weight code: {0}")]
    NotACwc(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("matrix is not in echelon form: {0}")]
    NotRref(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("coset {0} is empty after rank restriction")]
    EmptyAfterRestriction(usize),
    #[error("rank restriction violated: {0}")]
    RankRestrictionViolated(String),
    #[error("guard failed: {0}")]
    GuardFailed(String),
    #[error("odd delta {0} > 3 is not supported")]
    OddDeltaUnsupported(usize),
    #[error("no registry row for q={q} n={n} d={d} k={k}")]
    NotInRegistry { q: u32, n: usize, d: usize, k: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
