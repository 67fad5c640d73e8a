use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term {modulus:e} is too small to invert the series")]
    DivisionByZeroConstantTerm { modulus: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("S_r/pi = {0} is not below 1; input is not a Schur-class function")]
    NotInSchurClass(f64),

    #[error("the sharp constant is undefined at radius 0")]
    UndefinedAtZeroRadius,

    #[error("weight function is not positive: g({a}) = {value}")]
    NonPositiveWeight { a: f64, value: f64 },

    #[error("no interior critical point at r = {r}; roots found in (0,1): {roots:?}")]
    BoundaryMinimum { r: f64, roots: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, BohrError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(BohrError::Domain(msg.into()))
}
