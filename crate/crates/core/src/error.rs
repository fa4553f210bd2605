use std::fmt;

use thiserror::Error;

use crate::coefficients::CoefElem;

/// Syntax error from one of the expression grammars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, expected: &[&str], message: impl Into<String>) -> Self {
        Self {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("rewrite fuel exhausted after {steps} steps while rewriting {term}")]
    FuelExhausted { steps: u64, term: String },
    #[error("not divisible by e: augmentation is {0}")]
    NotDivisible(CoefElem),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
