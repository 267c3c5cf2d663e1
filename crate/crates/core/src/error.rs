use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group too large to enumerate: more than {cap} elements (enumeration cap)")]
    TooLarge { cap: usize },
    #[error("group of order {order} exceeds the character table cap {cap}")]
    TableCap { order: u64, cap: u64 },
    #[error("Dixon-Schneider failed to split eigenspaces; primes tried: {primes:?}")]
    DixonFailed { primes: Vec<u64> },
    #[error("{j} is not a unit modulo {n}")]
    NotCoprime { j: u64, n: u64 },
    #[error("vector scan of {size} vectors exceeds cap {cap}")]
    ScanCap { size: u64, cap: u64 },
    #[error("k = {k} does not divide p - 1 = {}", p - 1)]
    BadEigenOrder { k: u64, p: u64 },
    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("base group not r-semi-rational (r = {r})")]
    BaseNotSemiRational { r: u64 },
    #[error("group is not uniformly semi-rational")]
    NotUniformlySemiRational,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("construction of {name} failed: {reason}")]
    Construction { name: String, reason: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
