//! Macroscopic quantum electrodynamics at covariance level for the most
//! general linear absorbing media: non-local, bianisotropic and
//! Onsager-violating.
//!
//! The crate provides
//!
//! * complex tensor algebra with generalized (Hermitian/anti-Hermitian)
//!   real and imaginary parts and positive-semidefinite square roots,
//! * parametric causal dispersion models for bianisotropic media and
//!   their classification,
//! * assembly of Ohm-law conductivity kernels and Helmholtz operators,
//!   both in k-space for homogeneous media and on a 1-D grid for
//!   non-local media,
//! * Green-tensor solvers with Onsager, Schwarz-reflection and
//!   high-frequency diagnostics,
//! * noise covariance matrices, their square roots and the
//!   fluctuation-dissipation integral relation,
//! * the electromagnetic duality engine: field rotations, the four-slot
//!   response transformation and symmetry classification.

pub mod constants;
pub mod conductivity;
pub mod duality;
pub mod error;
pub mod fluctuations;
pub mod green;
pub mod media;
pub mod tensors;

#[cfg(test)]
pub(crate) mod testutil;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use tensors::{CMatrix, CTensor3, C64};
