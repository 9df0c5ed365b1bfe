use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid weight {weight} on edge ({u}, {v}): weights must be positive and finite")]
    InvalidWeight { u: usize, v: usize, weight: String },

    #[error("undirected graph has asymmetric weights on ({u}, {v})")]
    AsymmetricWeights { u: usize, v: usize },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("vertex {0} has zero out-degree")]
    ZeroOutDegree(usize),

    #[error("vertex {0} has zero degree")]
    ZeroDegree(usize),

    #[error("graph is not Eulerian")]
    NotEulerian,

    #[error("operation requires an undirected graph")]
    NotUndirected,

    #[error("operation requires a regular graph")]
    NotRegular,

    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NotConverged { sweeps: usize, off: f64 },

    #[error("spectral consistency check failed: {0}")]
    SpectralCheck(String),

    #[error("cap exceeded: {what} with n = {n} is above the limit of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("weights too large for exact enumeration (scaled volume exceeds 2^62)")]
    ExactOverflow,

    #[error("empty vertex set")]
    EmptySet,

    #[error("sets have zero total volume")]
    ZeroVolume,

    #[error("sign vector is all zeros")]
    ZeroSignVector,

    #[error("vertex set sizes do not match the graph ({expected} vs {found})")]
    SizeMismatch { expected: usize, found: usize },

    #[error("bound is degenerate: directed conductance of the pair equals 1")]
    DegenerateBound,

    #[error("{0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("strongly connected sample not found after {0} attempts")]
    RetryLimit(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
