use thiserror::Error;

/// Errors produced by the chain solver and its oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("temperature must be strictly positive and finite, got {0}")]
    NonPositiveTemperature(f64),

    #[error("a periodic chain needs at least one plaquette")]
    ZeroPlaquettes,

    #[error("enumeration is capped at {max} plaquettes, got {got}")]
    ChainTooLarge { got: usize, max: usize },

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("transfer weights are not reflection symmetric: w(+,-)={pm}, w(-,+)={mp}")]
    AsymmetricWeights { pm: f64, mp: f64 },

    #[error("parameter {name} is not finite: {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
