use thiserror::Error;

/// Errors shared across the crate.
///
/// Anything that violates a documented precondition (invalid pmf data,
/// boundary marginals where an interior point is required, dimension caps on
/// the exhaustive algorithms) is reported here rather than panicking.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension {d} exceeds the supported bound {bound} for {operation}")]
    DimensionBound {
        d: usize,
        bound: usize,
        operation: &'static str,
    },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("probability vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },

    #[error("negative probability {value} at outcome {outcome}")]
    NegativeProbability { outcome: String, value: String },

    #[error("probabilities sum to {got}, expected 1")]
    BadNormalization { got: String },

    #[error("marginal mean {value} at coordinate {coordinate} lies outside [0, 1]")]
    MarginalOutOfRange { coordinate: usize, value: String },

    #[error("marginal mean {value} at coordinate {coordinate} must lie strictly inside (0, 1)")]
    BoundaryMarginal { coordinate: usize, value: String },

    #[error("marginal means of the two pmfs differ at coordinate {coordinate}: {left} vs {right}")]
    MarginalMismatch {
        coordinate: usize,
        left: String,
        right: String,
    },

    #[error("operands have different dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("sum distributions have different means: {left} vs {right}")]
    MeanMismatch { left: String, right: String },

    #[error("{context}: empty coordinate subset")]
    EmptySubset { context: &'static str },

    #[error("coordinate index {index} out of range for dimension {d}")]
    CoordinateOutOfRange { index: usize, d: usize },

    #[error("invalid outcome key {key:?}: {reason}")]
    InvalidOutcomeKey { key: String, reason: String },

    #[error("invalid number {text:?}: {reason}")]
    InvalidNumber { text: String, reason: String },

    #[error("malformed pmf document: {0}")]
    MalformedDocument(String),

    #[error("solver did not converge: residual {residual} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("pmf is not supported on two consecutive levels, cannot treat it as a conditional Bernoulli law")]
    NotTwoLevelSupport,

    #[error("target total mean {p_bullet} is incompatible with mode {mode}")]
    IncompatibleMode { p_bullet: f64, mode: String },

    #[error("coefficients are not proportional to a product form: ratio spread {spread} exceeds {tol}")]
    NotProductForm { spread: f64, tol: f64 },

    #[error("scale factor {value} at coordinate {coordinate} must be positive")]
    NonpositiveScale { coordinate: usize, value: String },

    #[error("coordinate pair must be distinct, got ({0}, {0})")]
    PairNotDistinct(usize),

    #[error("pmf does not lie in the polytope: {reason}")]
    OutsidePolytope { reason: String },

    #[error("infeasible system: {context}")]
    Infeasible { context: &'static str },

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("block partition invalid: {reason}")]
    BadPartition { reason: String },

    #[error("alphas must be sorted increasing within [0, 1]")]
    BadAlphas,
}

pub type Result<T> = std::result::Result<T, Error>;
