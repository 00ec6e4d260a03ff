use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("leading minor {index} is not positive ({value})")]
    NotPositiveDefinite { index: usize, value: i128 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("vector is not primitive (coordinate gcd {gcd})")]
    NotPrimitive { gcd: i64 },
    #[error("no orthogonal split: <a, basis_{index}> = {value} is not a multiple of <a, a> = {norm}")]
    NoOrthogonalSplit { index: usize, value: i64, norm: i64 },
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("zero vector")]
    ZeroVector,
    #[error("vector {0:?} is not a screener")]
    NotScreener(Vec<i64>),
    #[error("norm {norm} does not equal 2*{p}*{q}")]
    NormMismatch { norm: i64, p: i64, q: i64 },
    #[error("vector has odd norm {0}")]
    OddNorm(i64),
    #[error("screener set is empty")]
    EmptyScreenerSet,
    #[error("vectors do not form a basis of the lattice (|det| = {det})")]
    NotABasis { det: i128 },
    #[error("lattice is not even")]
    NotEven,
    #[error("lattice is not generated by its screeners (rank {rank} of {dim}, index {index})")]
    NotGeneratedByScreeners { rank: usize, dim: usize, index: i64 },
    #[error("inner product {inner} between screeners of norms {small} and {large} violates the angle constraint")]
    AngleViolation { small: i64, large: i64, inner: i64 },
    #[error("component of rank {rank} with {roots} roots matches no simply laced type")]
    Unrecognized { rank: usize, roots: usize },
    #[error("invalid catalog request {family}_{rank}")]
    InvalidCatalog { family: char, rank: usize },
    #[error("scale must be positive")]
    InvalidScale,
    #[error("lattice has rank {0}, expected 2")]
    RankNotTwo(usize),
    #[error("no dual vector with <a, gamma> = {target}: {reason}")]
    GammaUnavailable { target: String, reason: String },
    #[error("({p}, {q}) is not a valid decomposition: {reason}")]
    InvalidPair { p: i64, q: i64, reason: String },
    #[error("classification mismatch: {0}")]
    ClassificationMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("arithmetic overflow")]
    Overflow,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyMatrix => "E_EMPTY_MATRIX",
            Error::NotSquare { .. } => "E_NOT_SQUARE",
            Error::NotSymmetric { .. } => "E_NOT_SYMMETRIC",
            Error::NotPositiveDefinite { .. } => "E_NOT_POSITIVE_DEFINITE",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::ZeroModulus => "E_ZERO_MODULUS",
            Error::NotPrimitive { .. } => "E_NOT_PRIMITIVE",
            Error::NoOrthogonalSplit { .. } => "E_NO_SPLIT",
            Error::LinearlyDependent => "E_DEPENDENT",
            Error::ZeroVector => "E_ZERO_VECTOR",
            Error::NotScreener(_) => "E_NOT_SCREENER",
            Error::NormMismatch { .. } => "E_NORM_MISMATCH",
            Error::OddNorm(_) => "E_ODD_NORM",
            Error::EmptyScreenerSet => "E_NO_SCREENERS",
            Error::NotABasis { .. } => "E_NOT_BASIS",
            Error::NotEven => "E_NOT_EVEN",
            Error::NotGeneratedByScreeners { .. } => "E_NOT_GENERATED",
            Error::AngleViolation { .. } => "E_ANGLE",
            Error::Unrecognized { .. } => "E_UNRECOGNIZED",
            Error::InvalidCatalog { .. } => "E_CATALOG",
            Error::InvalidScale => "E_SCALE",
            Error::RankNotTwo(_) => "E_RANK",
            Error::GammaUnavailable { .. } => "E_GAMMA",
            Error::InvalidPair { .. } => "E_PAIR",
            Error::ClassificationMismatch(_) => "E_MISMATCH",
            Error::Parse { .. } => "E_PARSE",
            Error::Overflow => "E_OVERFLOW",
        }
    }

    /// Process exit status used by the command line front end.
    pub fn exit_status(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::EmptyMatrix
            | Error::NotSquare { .. }
            | Error::NotSymmetric { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidCatalog { .. }
            | Error::InvalidScale => 2,
            _ => 3,
        }
    }
}
