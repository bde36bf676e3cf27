use std::path::PathBuf;

use thiserror::Error;

use crate::strategy::Strategy;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse strategy name {0:?}")]
    ParseStrategy(String),
    #[error("norm rules must each be -1, 0 or 1, got {0:?}")]
    InvalidNorm([i8; 4]),
    #[error("cannot parse regime {0:?} (expected 2a, 2b or 2c)")]
    ParseRegime(String),
    #[error("cannot parse composition {0:?}")]
    ParseComposition(String),
    #[error("population must hold at least 2 players, got {0}")]
    PopulationTooSmall(u32),
    #[error("strategy {0} is absent from the population")]
    StrategyAbsent(Strategy),
    #[error("no reputation supplied for strategy {0}")]
    MissingReputation(Strategy),
    #[error("invalid fixation query: {0}")]
    InvalidQuery(String),
    #[error("non-finite intermediate value in fixation sum")]
    NonFinite,
    #[error("no stored compositions to sample from")]
    EmptyTraceStore,
    #[error("invalid value for `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("schema mismatch in {path}: expected {expected:?}, found {found:?}")]
    SchemaMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("config parse error: {0}")]
    ConfigParse(#[from] toml::de::Error),
    #[error("config serialize error: {0}")]
    ConfigSerialize(#[from] toml::ser::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParseStrategy(_) => "parse_strategy",
            Error::InvalidNorm(_) => "invalid_norm",
            Error::ParseRegime(_) => "parse_regime",
            Error::ParseComposition(_) => "parse_composition",
            Error::PopulationTooSmall(_) => "population_too_small",
            Error::StrategyAbsent(_) => "strategy_absent",
            Error::MissingReputation(_) => "missing_reputation",
            Error::InvalidQuery(_) => "invalid_query",
            Error::NonFinite => "non_finite",
            Error::EmptyTraceStore => "empty_trace_store",
            Error::InvalidConfig { .. } => "invalid_config",
            Error::SchemaMismatch { .. } => "schema_mismatch",
            Error::ConfigParse(_) => "config_parse",
            Error::ConfigSerialize(_) => "config_serialize",
            Error::Csv(_) => "csv",
            Error::Io { .. } => "io",
        }
    }

    /// Config field the error refers to, when there is one.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::InvalidConfig { field, .. } => Some(field),
            _ => None,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
