use thiserror::Error;

use crate::subset::SubsetMask;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("universe has {n} points, limit is {max}")]
    SizeOverflow { n: usize, max: usize },

    #[error("universe mismatch: expected {expected} points, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("subset {set} lies outside a universe of {n} points")]
    SubsetOutOfRange { set: SubsetMask, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("table must have 2^n = {expected} values, found {found}")]
    TableLength { expected: usize, found: usize },

    #[error("value on the empty set must be 0, found {0}")]
    NonzeroEmpty(String),

    #[error("negative value {value} on {set}")]
    NegativeValue { set: SubsetMask, value: String },

    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: String },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix is not diagonally positive: lambda(A x A) = {value} < 0 for A = {witness}")]
    NotDiagonallyPositive { witness: SubsetMask, value: String },

    #[error("decoherence condition {condition} fails: {detail}")]
    Decoherence { condition: &'static str, detail: String },

    #[error("grade-2 additivity fails for A = {a}, B = {b}, C = {c}")]
    Grade2Failure { a: SubsetMask, b: SubsetMask, c: SubsetMask },

    #[error("sets are not mutually disjoint: {0} and {1} intersect")]
    NotDisjoint(SubsetMask, SubsetMask),

    #[error("need at least {needed} parts, got {found}")]
    TooFewParts { needed: usize, found: usize },

    #[error("function takes negative value {value} at index {index}")]
    NegativeFunction { index: usize, value: String },

    #[error("parallelogram law fails at u = {u:?}, v = {v:?}")]
    ParallelogramFailure { u: Vec<f64>, v: Vec<f64> },

    #[error("polarized matrix does not reproduce Q at v = {v:?} ({expected} vs {found})")]
    ReconstructionMismatch { v: Vec<f64>, expected: f64, found: f64 },

    #[error("measure {measure} is negative ({value}) on {set}")]
    NegativeMeasure { measure: String, set: String, value: String },

    #[error("inverse of piece [{lo}, {hi}] misses level {level} by {miss}")]
    InverseOracle { lo: f64, hi: f64, level: f64, miss: f64 },

    #[error("quadrature did not reach tolerance {tol:e} within {budget} evaluations (estimate {estimate:e})")]
    Quadrature { tol: f64, budget: usize, estimate: f64 },

    #[error("function is not monotone: {0}")]
    NotMonotone(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("grid point {y} outside ({lo}, {hi})")]
    GridOutOfRange { y: f64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
