use thiserror::Error;

use crate::oracle::ElementId;

/// Errors surfaced by instance construction, parsing and solving.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkpError {
    #[error("element {element} out of range for a universe of {size} elements")]
    ElementOutOfRange { element: ElementId, size: usize },

    #[error("item {item} out of range (set {set}, {items} items)")]
    ItemOutOfRange {
        set: usize,
        item: usize,
        items: usize,
    },

    #[error("invalid probability {p} on edge (source {from}, target {to})")]
    InvalidProbability { from: usize, to: usize, p: f64 },

    #[error("duplicate edge (source {from}, target {to})")]
    DuplicateEdge { from: usize, to: usize },

    #[error("invalid value {value} for element {element}: {reason}")]
    InvalidValue {
        element: usize,
        value: f64,
        reason: &'static str,
    },

    #[error("weight of element {element} must be positive and finite, got {weight}")]
    InvalidWeight { element: ElementId, weight: f64 },

    #[error("budget must be positive and finite, got {0}")]
    InvalidBudget(f64),

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown weight scheme `{0}`")]
    UnknownScheme(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("universe of {size} elements exceeds the brute-force limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, SkpError>;
