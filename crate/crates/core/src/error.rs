use thiserror::Error;

/// Errors raised by polynomial, basis and operator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: left endpoint must be strictly below the right one")]
    InvalidInterval { a: f64, b: f64 },

    #[error("polynomial is constant")]
    ConstantPolynomial,

    #[error("polynomial is not increasing on the interval (derivative is {value:e} at x = {at})")]
    NotIncreasing { at: f64, value: f64 },

    #[error("value {y} lies outside the range [{lo}, {hi}]")]
    OutOfRange { y: f64, lo: f64, hi: f64 },

    #[error("basis index {k} is outside 0..={n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("dimension {n} is below the polynomial degree {degree}")]
    DegreeTooHigh { n: usize, degree: usize },

    #[error("operator is not defined for n = {n} (offending indices {offending:?})")]
    OperatorNotDefined { n: usize, offending: Vec<usize> },

    #[error("points must satisfy x0 < x1 < x2, got ({x0}, {x1}, {x2})")]
    NotOrdered { x0: f64, x1: f64, x2: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
