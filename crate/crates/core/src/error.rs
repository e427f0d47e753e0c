use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid deformation parameter q = {0}: q must be nonzero with |q| != 1")]
    InvalidQ(String),
    #[error("{what} must be nonnegative, got {value}")]
    Negative { what: &'static str, value: i64 },
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("repeated interpolation abscissa {0}")]
    RepeatedAbscissa(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("k0 eigenvalues do not form a single q^2-chain: {0}")]
    NotAChain(String),
    #[error("weight shift rule violated by {generator} at ({row}, {col})")]
    ShiftRule {
        generator: &'static str,
        row: usize,
        col: usize,
    },
    #[error("k0*k1 does not act as a scalar")]
    NotScalar,
    #[error("representation dimension {dim} exceeds oracle cap {cap}")]
    OracleCap { dim: usize, cap: usize },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid module spec: {0}")]
    InvalidSpec(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
