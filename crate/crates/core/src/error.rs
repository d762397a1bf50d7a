use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {vertex} (line {line})")]
    SelfLoop { vertex: usize, line: usize },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The slack radius is too small for the clustering radii that were produced.
    #[error(
        "r_hat = {r_hat} is below 4 * max_radius * log2(n) = {required}; raise --c (currently {c})"
    )]
    Configuration { r_hat: u64, required: u64, c: f64 },

    #[error("unknown generator spec `{0}` (expected er:<n>:<p>, grid:<w>:<h>, cycle:<n>, tree:<n>, geo:<n>:<radius>)")]
    UnknownGenerator(String),

    #[error("emulator underestimates distance between {u} and {v}: d_H = {dist_h}, d_G = {dist_g}")]
    Underestimate {
        u: usize,
        v: usize,
        dist_h: u64,
        dist_g: u64,
    },

    #[error("vertex {vertex} is not covered by any cluster core")]
    Uncovered { vertex: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
