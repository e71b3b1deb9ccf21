use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse family '{input}': {reason}")]
    FamilyParse { input: String, reason: String },

    #[error("{operation} is not available for the {family} family")]
    UnsupportedFamily {
        family: &'static str,
        operation: &'static str,
    },

    #[error("bisection for eigenvalue {index} did not converge within {budget} steps")]
    NonConvergence { index: usize, budget: usize },

    #[error("Newton iteration left the bracket [{lo}, {hi}]")]
    Divergence { lo: f64, hi: f64 },

    #[error("zeros {i} and {j} coincide")]
    NonDistinctZeros { i: usize, j: usize },

    #[error("pole in the product identity: x_{m} - x_{k} equals the shift")]
    Pole { m: usize, k: usize },

    #[error("zero denominator: {0}")]
    ZeroDenominator(&'static str),

    #[error("index {index} out of range for {len} zeros")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degenerate Jacobi-class parameters: |a| = |b| (a = {a}, b = {b})")]
    DegenerateParameters { a: f64, b: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    Quadrature { tolerance: f64, estimate: f64 },

    #[error("zeros are scaled as {zeros}, model expects {model}")]
    ScaleMismatch { zeros: String, model: String },

    #[error("point {0} is on the support boundary or a piece boundary")]
    BoundaryPoint(f64),

    #[error("every gap deviation is below the precision floor {floor:e}; try double-double or multiprecision mode, or a smaller n")]
    AllGapsBelowFloor { floor: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
