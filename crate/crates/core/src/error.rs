use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is too small (need m >= 3)")]
    InvalidModulus(u32),
    #[error("circulant is not weight-2")]
    NotWeightTwo,
    #[error("weight-2 circulant needs two distinct exponents mod {m}, got {a} and {b}")]
    RepeatedExponent { m: u32, a: u64, b: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("separation {s} out of range for m = {m}")]
    SeparationOutOfRange { m: u32, s: u32 },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entry set has odd size {0}")]
    OddEntrySet(usize),
    #[error("branching factor (c-1)(s-1) = {0} must exceed 1")]
    DegenerateBranching(u64),
    #[error("unsupported cycle half-length {0}")]
    UnsupportedHalfLength(usize),
    #[error("unsupported cycle length {0}")]
    UnsupportedLength(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("diagonal offsets violate the class precondition: {0}")]
    DeltaPrecondition(String),
    #[error("search budget of {0} draws exhausted without a passing instance")]
    BudgetExhausted(u64),
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("alist parse error on line {line}: {msg}")]
    AlistParse { line: usize, msg: String },
    #[error("alist weight mismatch: {0}")]
    AlistWeight(String),
    #[error("alist row and column views disagree: {0}")]
    AlistInconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
