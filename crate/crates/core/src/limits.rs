use crate::{Error, Result};

/// Environment variable that overrides every dense-materialization cap.
pub const MAX_N_ENV: &str = "CUBESPEC_MAX_N";

/// Hard ceiling on the hypercube dimension; vertices are stored in a `u64`.
pub const HARD_MAX_DIMENSION: u32 = 40;

/// Size caps for operations that materialize dense matrices or exact systems.
///
/// All caps are expressed as a hypercube dimension `n` (order `2^n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest dimension a [`CayleyGraph`](crate::cayley::CayleyGraph) may have.
    pub max_dimension: u32,
    /// Dense `f64` matrices (normalized Laplacian, block-structure check).
    pub dense_float: u32,
    /// Dense exact rational matrices (exact Laplacian, Matrix-Tree cofactor).
    pub dense_exact: u32,
    /// Exact mean-first-passage solves.
    pub mfpt: u32,
    /// Exact characteristic polynomials of degree `2^n`.
    pub polynomial: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dimension: 20,
            dense_float: 12,
            dense_exact: 6,
            mfpt: 8,
            polynomial: 12,
        }
    }
}

impl Limits {
    /// Defaults, with every dense cap replaced by `CUBESPEC_MAX_N` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_N_ENV) {
            Ok(raw) => {
                let cap: u32 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{MAX_N_ENV}={raw:?} is not an integer")))?;
                Ok(Limits::default().with_dense_cap(cap))
            }
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn with_dense_cap(self, cap: u32) -> Self {
        let cap = cap.min(HARD_MAX_DIMENSION);
        Limits {
            max_dimension: self.max_dimension.max(cap),
            dense_float: cap,
            dense_exact: cap,
            mfpt: cap,
            polynomial: cap,
        }
    }
}
