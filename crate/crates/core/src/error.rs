use thiserror::Error;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Solver,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("vertex {vertex} has degree {degree}, exceeding the degree bound {bound}")]
    DegreeBound { vertex: usize, degree: usize, bound: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex {0} has degree zero")]
    ZeroDegree(usize),

    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCap { what: &'static str, size: usize, cap: usize },

    #[error("no simple graph after {0} pairing attempts")]
    RejectionLimit(usize),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("block factor vanishes after projection: {0}")]
    DegenerateBlockFactor(String),

    #[error("chain is not reversible (residual {0:e}); try a larger type radius")]
    NonReversible(f64),

    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SizeCap { .. } | Error::RejectionLimit(_) => ErrorKind::Resource,
            Error::NonConvergence { .. } => ErrorKind::Solver,
            Error::Trial { source, .. } => source.kind(),
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
