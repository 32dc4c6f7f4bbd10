use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical or physical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported basis: n = {n} (only n <= 2 states are modelled)")]
    UnsupportedBasis { n: u32 },

    /// External field too strong for the perturbative treatment.
    #[error("field {field:e} V/m exceeds the perturbative limit (Stark ratio {ratio:e} > {limit:e})")]
    Validity { field: f64, ratio: f64, limit: f64 },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("no crossover: {0}")]
    NoCrossover(String),

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("invalid sweep spec: {0}")]
    Spec(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
