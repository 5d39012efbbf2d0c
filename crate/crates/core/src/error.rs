use thiserror::Error;

use crate::graded::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("expression outside the superfield basis: {0}")]
    OutsideBasis(String),
    #[error("inhomogeneous expression where a homogeneous one is required: {0}")]
    Inhomogeneous(String),
    #[error("invalid potential specification '{0}'")]
    Potential(String),
    #[error("linear system has no solution: {0}")]
    Unsolvable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown operator '{0}'")]
    Operator(String),
    #[error("Lagrangian contains the second-order jet {0}")]
    SecondOrder(String),
    #[error("displayed and derived forms disagree: {0}")]
    Disagreement(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
