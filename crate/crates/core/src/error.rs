use thiserror::Error;

use crate::instance::{BlockId, VertexId};
use crate::sequences::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown block {0}")]
    UnknownBlock(BlockId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("{op} is only defined for graphs (r = 2), instance has r = {r}")]
    UnsupportedUniformity { op: &'static str, r: usize },
    #[error("instance has no blocks")]
    EmptyPartition,
    #[error("{0:?} is not an edge of the instance")]
    ForeignEdge(Vec<VertexId>),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("parameter error: {message}")]
    Parameter {
        message: String,
        /// Smallest block size for which the parameters become admissible.
        min_t: Option<u64>,
    },
    #[error("invalid grade sequence: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSequence(Vec<Violation>),
    #[error("construction bound violated: {0}")]
    BoundViolated(String),
    #[error("construction too large to materialize: {vertices} vertices, {edges} edges")]
    TooLarge { vertices: String, edges: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parameter(message: impl Into<String>) -> Self {
        Error::Parameter {
            message: message.into(),
            min_t: None,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
