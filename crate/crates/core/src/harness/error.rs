use thiserror::Error;

use crate::category::CategoryError;
use crate::models::ModelError;
use crate::monoid::MonoidError;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Malformed or inconsistent fixture; maps to exit code 2.
    #[error("invalid input at {location}: {reason}")]
    Input { location: String, reason: String },
    #[error("generator for {kind} gave up after {attempts} rejected samples")]
    BoundsTooTight { kind: String, attempts: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl HarnessError {
    pub fn input(location: impl Into<String>, reason: impl ToString) -> Self {
        HarnessError::Input {
            location: location.into(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
