use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {n} outside supported range {min}..={max}")]
    DimensionRange { n: u32, min: u32, max: u32 },

    #[error("invalid generator set: {0}")]
    InvalidGenerator(String),

    #[error("vertex {vertex} out of range for a graph with {order} vertices")]
    VertexOutOfRange { vertex: u64, order: u64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix not symmetric at ({row}, {col}): |a_ij - a_ji| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two routes that must agree did not. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn range(n: u32, min: u32, max: u32) -> Self {
        Error::DimensionRange { n, min, max }
    }

    pub(crate) fn check_range(n: u32, min: u32, max: u32) -> Result<()> {
        if n < min || n > max {
            Err(Self::range(n, min, max))
        } else {
            Ok(())
        }
    }
}
