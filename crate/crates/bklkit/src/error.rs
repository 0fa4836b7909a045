// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Parsing and shape problems are distinguished from invariant failures so
/// that front ends can map them to different exit codes: a malformed request
/// is the caller's fault, a broken invariant is a bug (or a counterexample).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BklError {
    /// A textual encoding (sequence, weight, partition, wedge spec) did not parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Arguments parsed but do not fit together (length mismatch, wrong window kind, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two sequences were expected to be adjacent but are not.
    #[error("sequences {0} and {1} are not adjacent")]
    NotAdjacent(String, String),

    /// `interval(g, f)` was requested although `g` is not below `f`.
    #[error("{g} is not below {f} in the Bruhat ordering of {b}")]
    NotComparable { b: String, g: String, f: String },

    /// An action produced a basis index outside the window.
    #[error("index {index} left the window of level {k}")]
    WindowOverflow { index: String, k: i32 },

    /// An exact division that must succeed did not.
    #[error("non-integral quotient: {0}")]
    NonIntegral(String),

    /// A mathematical invariant of the construction failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Filesystem or serialisation failure in the cache layer.
    #[error("i/o error: {0}")]
    Io(String),
}

impl BklError {
    /// True when the error reflects a malformed request rather than a failed invariant.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            BklError::Parse(_) | BklError::InvalidInput(_) | BklError::NotAdjacent(..)
        )
    }
}

impl From<std::io::Error> for BklError {
    fn from(e: std::io::Error) -> Self {
        BklError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for BklError {
    fn from(e: serde_json::Error) -> Self {
        BklError::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, BklError>;
