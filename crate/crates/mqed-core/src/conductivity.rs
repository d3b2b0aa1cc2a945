//! Ohm-law conductivity kernels and the generalized Helmholtz operators.
//!
//! For a homogeneous local bianisotropic medium the k-space conductivity
//! is assembled term by term as
//!
//! ```text
//! Q(k,w) = -(i mu0 w)^-1 (iK)(mu^-1 - I)(iK)
//!          + (i/Z0) K mu^-1 zeta  -  (i/Z0) xi mu^-1 K
//!          - i eps0 w (eps - xi mu^-1 zeta - I),        K = k x
//! ```
//!
//! The sign of each curl factor is pinned by the equivalence invariant:
//! the generic Helmholtz operator built from this kernel,
//!
//! ```text
//! M(k,w) = (k^2 I - k k^T) - (w^2/c^2) I - i mu0 w Q(k,w),
//! ```
//!
//! must coincide with the bianisotropic operator assembled directly from
//! the responses,
//!
//! ```text
//! M_bi(k,w) = -K mu^-1 K + (w/c) K mu^-1 zeta - (w/c) xi mu^-1 K
//!             - (w^2/c^2)(eps - xi mu^-1 zeta).
//! ```
//!
//! With these signs the Hermitian part of Q is also congruent to the 6x6
//! noise covariance block matrix, which keeps passive media passive for
//! every k (see the fluctuations module tests).

use std::fmt;
use std::sync::Arc;

use nalgebra::{DVector, Vector3};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::media::{MediumModel, ResponseSet};
use crate::tensors::{c64, cre, cross_matrix_c, CMatrix, CTensor3, C64};

/// Minimum grid size for the 1-D non-local kernel.
pub const MIN_GRID_POINTS: usize = 16;

/// Local k-space conductivity of a bianisotropic medium (see module docs
/// for the pinned sign convention).
pub fn local_conductivity_k(
    rs: &ResponseSet,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<CTensor3> {
    let mu_inv = rs.mu_inv()?;
    let kx = cross_matrix_c(k);
    let i = c64(0.0, 1.0);

    let curl_coupling = mu_inv - CTensor3::identity();
    let mut q = CTensor3::zeros();
    if curl_coupling.norm() > 0.0 {
        if omega == C64::ZERO {
            return Err(Error::InvalidInput(
                "local conductivity of a magnetic medium is undefined at omega = 0".into(),
            ));
        }
        q += kx * curl_coupling * kx * (-i / (cre(kc.mu0) * omega));
    }
    q += kx * mu_inv * rs.zeta * (i / cre(kc.z0));
    q -= rs.xi * mu_inv * kx * (i / cre(kc.z0));
    q -= (rs.eps - rs.xi * mu_inv * rs.zeta - CTensor3::identity()) * (i * cre(kc.eps0) * omega);
    Ok(q)
}

/// Generic Helmholtz operator M = (k^2 I - kk^T) - (w^2/c^2) I - i mu0 w Q
/// for an already evaluated conductivity tensor.
pub fn helmholtz_from_q(
    q: &CTensor3,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> CTensor3 {
    let k2 = k.norm_squared();
    let free = CTensor3::from_fn(|r, c| {
        let kk = k[r] * k[c];
        cre(if r == c { k2 - kk } else { -kk })
    });
    let w_c = omega / cre(kc.c);
    free - CTensor3::identity() * (w_c * w_c) - q * c64(0.0, kc.mu0) * omega
}

/// Bianisotropic Helmholtz operator assembled directly from the responses.
pub fn helmholtz_bianisotropic_k(
    rs: &ResponseSet,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<CTensor3> {
    let mu_inv = rs.mu_inv()?;
    let kx = cross_matrix_c(k);
    let w_c = omega / cre(kc.c);
    let m = -(kx * mu_inv * kx)
        + kx * mu_inv * rs.zeta * w_c
        - rs.xi * mu_inv * kx * w_c
        - (rs.eps - rs.xi * mu_inv * rs.zeta) * (w_c * w_c);
    Ok(m)
}

type KernelFn = dyn Fn(&Vector3<f64>, C64) -> Result<CTensor3> + Send + Sync;

/// k-space conductivity producer: either the local form of a dispersion
/// model, the shipped hydrodynamic Drude kernel, or a user closure.
#[derive(Clone)]
pub struct ConductivityK {
    producer: Arc<KernelFn>,
    provenance: String,
}

impl fmt::Debug for ConductivityK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConductivityK")
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl ConductivityK {
    /// Local conductivity of a parametric medium model.
    pub fn from_model(model: MediumModel, kc: PhysicalConstants) -> Self {
        let provenance = format!("local:{}", model.name);
        Self {
            producer: Arc::new(move |k, w| {
                let rs = model.evaluate(w)?;
                local_conductivity_k(&rs, k, w, &kc)
            }),
            provenance,
        }
    }

    /// Spatially dispersive Drude kernel: Drude response transverse to k,
    /// hydrodynamic pressure correction (beta^2 k^2) longitudinally.
    pub fn hydrodynamic_drude(wp: f64, gamma: f64, beta: f64, kc: PhysicalConstants) -> Self {
        let provenance = format!("hydrodynamic-drude:wp={wp},gamma={gamma},beta={beta}");
        Self {
            producer: Arc::new(move |k, w| {
                let i = c64(0.0, 1.0);
                let sigma_t = cre(kc.eps0 * wp * wp) / (cre(gamma) - i * w);
                let k2 = k.norm_squared();
                if k2 == 0.0 {
                    return Ok(CTensor3::identity() * sigma_t);
                }
                let sigma_l = i * cre(kc.eps0 * wp * wp) * w
                    / (w * w + i * cre(gamma) * w - cre(beta * beta * k2));
                let khat = k / k2.sqrt();
                let p_l = CTensor3::from_fn(|r, c| cre(khat[r] * khat[c]));
                let p_t = CTensor3::identity() - p_l;
                Ok(p_t * sigma_t + p_l * sigma_l)
            }),
            provenance,
        }
    }

    /// Arbitrary user-supplied kernel.
    pub fn from_closure<F>(provenance: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Vector3<f64>, C64) -> Result<CTensor3> + Send + Sync + 'static,
    {
        Self {
            producer: Arc::new(f),
            provenance: provenance.into(),
        }
    }

    pub fn q_tensor(&self, k: &Vector3<f64>, omega: C64) -> Result<CTensor3> {
        (self.producer)(k, omega)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

/// Generic Helmholtz operator for a conductivity producer.
pub fn helmholtz_generic_k(
    q: &ConductivityK,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<CTensor3> {
    let qt = q.q_tensor(k, omega)?;
    Ok(helmholtz_from_q(&qt, k, omega, kc))
}

/// Schwarz reflection residual of a conductivity producer,
/// |Q(-k, -w*)* - Q(k, w)|. The reflection flips k as well: conjugation
/// inverts the Fourier phase, so the k-space image of the real-space
/// reflection principle pairs (k, w) with (-k, -w*).
pub fn schwarz_residual_conductivity(
    q: &ConductivityK,
    k: &Vector3<f64>,
    omega: C64,
) -> Result<f64> {
    let direct = q.q_tensor(k, omega)?;
    let mirrored = q.q_tensor(&(-k), -omega.conj())?;
    Ok((mirrored.map(|z| z.conj()) - direct).norm())
}

// ---------------------------------------------------------------------------
// Non-local 1-D kernel
// ---------------------------------------------------------------------------

/// Discretized non-local medium in one dimension: fields polarized along
/// y, propagation along x, Dirichlet boundaries on a box of length L.
/// The conductivity kernel is a causal Drude sigma(w) smeared by a
/// normalized Gaussian of width ell,
///
/// ```text
/// Q[i,j](w) = sigma(w) g_ell(x_i - x_j) h,
/// H(w) = -D2 - (w^2/c^2) I - i mu0 w Q(w),
/// ```
///
/// with D2 the central-difference second derivative. The Gaussian smearing
/// violates strict light-cone support at exponentially small magnitude;
/// frequency-domain Schwarz reflection is preserved exactly.
#[derive(Debug, Clone)]
pub struct Nonlocal1DKernel {
    n: usize,
    length: f64,
    ell: f64,
    wp: f64,
    gamma: f64,
    constants: PhysicalConstants,
}

impl Nonlocal1DKernel {
    /// Grid of n interior points on (0, L); requires n >= 16 and
    /// ell >= 2h so the kernel is resolved.
    pub fn new(
        n: usize,
        length: f64,
        ell: f64,
        wp: f64,
        gamma: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if n < MIN_GRID_POINTS {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {n}"
            )));
        }
        if !length.is_finite() || length <= 0.0 || !ell.is_finite() || ell <= 0.0 {
            return Err(Error::InvalidInput(
                "domain length and smoothing length must be positive".into(),
            ));
        }
        if !wp.is_finite() || wp < 0.0 || !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidInput(
                "Drude parameters need wp >= 0 and gamma > 0".into(),
            ));
        }
        let h = length / (n + 1) as f64;
        if ell < 2.0 * h {
            return Err(Error::GridResolution { ell, min: 2.0 * h });
        }
        Ok(Self {
            n,
            length,
            ell,
            wp,
            gamma,
            constants,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn domain_length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.n + 1) as f64
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Interior grid points x_i = (i+1) h.
    pub fn points(&self) -> DVector<f64> {
        let h = self.spacing();
        DVector::from_fn(self.n, |i, _| (i + 1) as f64 * h)
    }

    /// Drude conductivity sigma(w) = eps0 wp^2 / (gamma - i w).
    pub fn sigma(&self, omega: C64) -> C64 {
        cre(self.constants.eps0 * self.wp * self.wp) / (cre(self.gamma) - c64(0.0, 1.0) * omega)
    }

    /// Smeared conductivity matrix Q[i,j] = sigma(w) g_ell(x_i - x_j) h.
    pub fn q_matrix(&self, omega: C64) -> CMatrix {
        let h = self.spacing();
        let s = self.sigma(omega);
        let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * self.ell);
        let two_ell2 = 2.0 * self.ell * self.ell;
        CMatrix::from_fn(self.n, self.n, |i, j| {
            let dx = (i as f64 - j as f64) * h;
            s * cre(norm * (-dx * dx / two_ell2).exp() * h)
        })
    }

    /// Assemble (H, Q) at the given frequency.
    pub fn matrices(&self, omega: C64) -> Result<(CMatrix, CMatrix)> {
        let q = self.q_matrix(omega);
        let h = self.spacing();
        let inv_h2 = 1.0 / (h * h);
        let w_c = omega / cre(self.constants.c);
        let w2c2 = w_c * w_c;
        let mut hmat = CMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            hmat[(i, i)] = cre(2.0 * inv_h2) - w2c2;
            if i + 1 < self.n {
                hmat[(i, i + 1)] = cre(-inv_h2);
                hmat[(i + 1, i)] = cre(-inv_h2);
            }
        }
        hmat -= &q * c64(0.0, self.constants.mu0) * omega;
        Ok((hmat, q))
    }
}

/// Discretized Helmholtz and conductivity matrices (H, Q) at omega.
pub fn nonlocal_1d_matrices(kern: &Nonlocal1DKernel, omega: C64) -> Result<(CMatrix, CMatrix)> {
    kern.matrices(omega)
}
