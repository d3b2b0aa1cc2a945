//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: dimension mismatch, empty grid, bad tolerance.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix expected to be Hermitian is not, beyond tolerance.
    #[error("matrix not Hermitian: relative asymmetry {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// Eigenvalue below the PSD tolerance; carries the offending eigenvalue.
    #[error("matrix not positive semidefinite: min eigenvalue {min_eigenvalue:.6e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// A medium model whose quantization prescription breaks down: the noise
    /// covariance has a genuinely negative eigenvalue.
    #[error("non-passive medium: noise covariance min eigenvalue {min_eigenvalue:.6e}")]
    NonPassiveMedium { min_eigenvalue: f64 },

    /// Medium model rejected at evaluation time (singular permeability, bad terms).
    #[error("invalid medium model: {0}")]
    InvalidModel(String),

    /// Helmholtz matrix is numerically singular.
    #[error("singular Helmholtz operator (condition estimate {cond:.3e}); try complex omega or a lossy model")]
    SingularHelmholtz { cond: f64 },

    /// Lossless solve too close to a real propagating pole.
    #[error("on-shell singularity: relative pole distance {distance:.3e}; use complex omega or a lossy model")]
    OnShellSingularity { distance: f64 },

    /// Non-local smoothing length too small for the grid.
    #[error("kernel not resolved: smoothing length {ell:.3e} < 2h = {min:.3e}")]
    GridResolution { ell: f64, min: f64 },

    /// The duality-rotated medium is degenerate at this angle.
    #[error("duality rotation singular at theta = {theta}: rotated permeability not invertible")]
    DualitySingular { theta: f64 },

    /// Symmetry classification failed where it must not (pi/2 closure).
    #[error("classification error: {0}")]
    Classification(String),

    /// Model file could not be parsed or violates the schema.
    #[error("model parse error: {0}")]
    ModelParse(String),
}
