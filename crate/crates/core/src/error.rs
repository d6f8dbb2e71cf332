use thiserror::Error;

use crate::series::FormalParameter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("parameter {0} may not carry a negative exponent")]
    NegativeExponent(FormalParameter),
    #[error("c → ∞ limit diverges: term {term} carries c^{c_power}")]
    Divergence { term: String, c_power: i32 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid indices for {deformation}: {message} (constraint {constraint})")]
    IndexConstraint {
        deformation: String,
        constraint: &'static str,
        message: String,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no catalog entry for {0}")]
    MissingCatalogEntry(String),
    #[error("star product did not terminate within {0} orders")]
    NonTerminating(u32),
    #[error("divergent contraction of Δ({generator}): {source}")]
    ContractionDivergence {
        generator: String,
        #[source]
        source: SeriesError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
