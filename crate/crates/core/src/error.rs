use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown generator index {index} (presentation has {rank} generators)")]
    UnknownGenerator { index: usize, rank: usize },

    #[error("unknown generator name {0:?}")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("capacity exceeded at depth {depth}: {size} elements exceed the limit of {limit}")]
    Capacity { depth: usize, size: usize, limit: usize },

    #[error("generator {generator} is not contracting (lipschitz constant {lipschitz})")]
    NonContracting { generator: String, lipschitz: f64 },

    #[error("maps of commuting generators {x} and {y} do not commute (residual {residual:e})")]
    IncompatibleRelation { x: String, y: String, residual: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for resource-limit failures, as opposed to malformed input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
