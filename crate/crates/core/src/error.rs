use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("n must be a positive integer")]
    ZeroN,

    #[error("argument must be a positive integer")]
    ZeroArgument,

    #[error("{k} is not a class representative for n = {n}")]
    NotARepresentative { n: u64, k: u64 },

    #[error("sieve limit must be at least 1")]
    ZeroLimit,

    #[error(
        "sieve limit {limit} exceeds the memory cap of {cap} entries \
         (about {bytes} bytes needed); raise the cap with --memory-cap or {env}",
        env = crate::sieve::MEMORY_CAP_ENV
    )]
    LimitAboveCap { limit: u64, cap: u64, bytes: u64 },

    #[error("Mertens table covers 1..={limit} but {needed} is required")]
    TableTooSmall { limit: u64, needed: u64 },

    #[error("sequence has {len} terms but n = {n} are required")]
    SequenceTooShort { len: usize, n: u64 },

    #[error("operands belong to different class structures (n = {left} and n = {right})")]
    StructureMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix of size {size} exceeds the dense oracle limit of {max}")]
    TooLargeForOracle { size: usize, max: usize },

    #[error("entry {0} cannot be represented exactly as a float")]
    InexactConversion(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
