use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("graph is not a forest")]
    NotAForest,

    #[error("resource limit exceeded: {what} (bound {bound})")]
    ResourceLimit { what: String, bound: u64 },

    #[error("{0}")]
    UnknownHomotopyType(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// True for guard/budget failures, which the CLI maps to a distinct exit code.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
