use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {0} is outside the supported range 0..=32")]
    OrderOutOfRange(usize),

    #[error("vertex {vertex} is not in a graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),

    #[error("malformed graph name {name:?}: {reason}")]
    MalformedName { name: String, reason: String },

    #[error("pattern does not fit in base graph {0}")]
    PatternDoesNotFit(String),

    #[error("malformed graph6 string: {0}")]
    MalformedGraph6(String),

    #[error("embedding scheme does not match the graph: {0}")]
    SchemeMismatch(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("search node limit of {0} exhausted before a decision was reached")]
    BudgetExhausted(u64),

    #[error("instance too large for the exhaustive oracle ({0} schemes)")]
    OracleTooLarge(u128),

    #[error("unknown surface {0:?}")]
    UnknownSurface(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("nonorientable genus parameter must be at least 1, got {0}")]
    InvalidGenusParameter(usize),

    #[error("Kuratowski enumeration limit of {0} reached without a decision")]
    EnumerationLimit(usize),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("malformed DOT input: {0}")]
    MalformedDot(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),
}
