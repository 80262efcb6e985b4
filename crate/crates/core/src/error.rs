use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what}, got {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDist(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("output alphabet of size {0} is too large for exhaustive permutation search (max {max})", max = crate::channels::MAX_SYMMETRY_OUTPUTS)]
    AlphabetTooLarge(usize),

    #[error("degenerate pair: crossover probability 1/2 leaves the critical-point equation undefined")]
    DegeneratePair,

    #[error("channel is not c-symmetric: {0}")]
    NotCSymmetric(String),

    #[error("invalid c-symmetry witness: {0}")]
    InvalidWitness(String),

    #[error("empty distribution class")]
    EmptyClass,

    #[error("no decomposition on the grid satisfies the marginal constraint")]
    EmptyGrid,

    #[error("linear program failed: {0}")]
    Solver(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unknown check '{0}'")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
