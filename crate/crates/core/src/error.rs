use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("coefficient {index} is not finite ({value})")]
    NonFiniteCoefficient { index: usize, value: f64 },
    #[error("compensation order K must be at least 1")]
    ZeroOrder,
    #[error("input vector must hold at least {min} entries, got {len}")]
    TooShort { min: usize, len: usize },
    #[error("coefficient {index} is not exactly representable in binary64")]
    NotRepresentable { index: usize },
    #[error("evaluation point {0} lies outside [0, 1]")]
    OutsideUnitInterval(f64),
    #[error("exact value is zero; relative error undefined")]
    ZeroExact,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("regression: {0}")]
    Regression(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
