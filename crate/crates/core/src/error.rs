use thiserror::Error;

/// Errors raised by problems, operators, algorithms and the statistics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation budget exhausted ({max} evaluations)")]
    BudgetExhausted { max: u64 },

    #[error("invalid parameter `{field}` = {value}: must be in {range}")]
    InvalidConfig {
        field: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("second derivative {curvature:e} is too close to zero")]
    SingularCurvature { curvature: f64 },

    #[error("no feasible moves from node {node}")]
    EmptyNeighborhood { node: usize },

    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("samples were taken at different budgets ({a} vs {b} evaluations)")]
    MismatchedBudgets { a: u64, b: u64 },

    #[error("NaN value where a finite objective value is required")]
    NotANumber,

    #[error("neither algorithm reached the target accuracy in any run")]
    NoSuccesses,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(field: &'static str, value: impl ToString, range: &'static str) -> Self {
        Error::InvalidConfig {
            field,
            value: value.to_string(),
            range,
        }
    }
}

/// Checks `lo <= value <= hi`, naming the parameter on failure.
pub(crate) fn check_range(
    field: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::config(field, value, range));
    }
    Ok(())
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}
