use thiserror::Error;

use crate::category::CategoryError;
use crate::monoid::MonoidError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("not a log curve datum: {0}")]
    NotACurveDatum(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

pub type Result<T> = std::result::Result<T, ModelError>;
