use thiserror::Error;

use crate::precision::BigReal;

/// Failure modes shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown formula: {0}")]
    UnknownFormula(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("inconsistent continued root: {0}")]
    Inconsistency(String),
    #[error("accuracy not reached: {message}")]
    Accuracy { message: String, best: Box<BigReal> },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
