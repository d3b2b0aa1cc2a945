//! Green-tensor solvers and diagnostics.
//!
//! In k-space the Green tensor of a homogeneous medium is the inverse of
//! the 3x3 Helmholtz operator, M(k,w) G(k,w) = I; the solver reports both
//! inverse residuals since G is also the left inverse. On the 1-D grid the
//! discrete Green matrix satisfies H G = (1/h) I so that G approximates
//! the continuum kernel against the discrete delta.

use nalgebra::Vector3;

use crate::conductivity::{
    helmholtz_bianisotropic_k, helmholtz_from_q, local_conductivity_k, ConductivityK,
    Nonlocal1DKernel,
};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::media::{MediumModel, ResponseSet};
use crate::tensors::{cre, cross_matrix_c, identity3, CMatrix, CTensor3, C64};

/// Condition-number bound for accepting a Helmholtz solve.
pub const HELMHOLTZ_COND_MAX: f64 = 1e12;
/// Lossless solves closer than this (relative) to a real pole are refused.
pub const ON_SHELL_DISTANCE_MIN: f64 = 1e-8;

/// Anything that can assemble a k-space Helmholtz operator and the
/// matching conductivity kernel: a response set, a dispersion model or a
/// conductivity producer.
pub trait HelmholtzSource {
    fn helmholtz(&self, k: &Vector3<f64>, omega: C64, kc: &PhysicalConstants)
        -> Result<CTensor3>;
    fn conductivity(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3>;
}

impl HelmholtzSource for ResponseSet {
    /// Uses the response tensors as evaluated; pass the frequency the set
    /// was evaluated at.
    fn helmholtz(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        helmholtz_bianisotropic_k(self, k, omega, kc)
    }

    fn conductivity(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        local_conductivity_k(self, k, omega, kc)
    }
}

impl HelmholtzSource for MediumModel {
    fn helmholtz(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        let rs = self.evaluate(omega)?;
        helmholtz_bianisotropic_k(&rs, k, omega, kc)
    }

    fn conductivity(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        let rs = self.evaluate(omega)?;
        local_conductivity_k(&rs, k, omega, kc)
    }
}

impl HelmholtzSource for ConductivityK {
    fn helmholtz(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        let q = self.q_tensor(k, omega)?;
        Ok(helmholtz_from_q(&q, k, omega, kc))
    }

    fn conductivity(
        &self,
        k: &Vector3<f64>,
        omega: C64,
        _kc: &PhysicalConstants,
    ) -> Result<CTensor3> {
        self.q_tensor(k, omega)
    }
}

/// Green tensor at one (k, omega) with its inverse residuals.
#[derive(Debug, Clone)]
pub struct GreenK {
    pub tensor: CTensor3,
    pub k: Vector3<f64>,
    pub omega: C64,
    /// |M G - I| / sqrt(3)
    pub right_residual: f64,
    /// |G M - I| / sqrt(3)
    pub left_residual: f64,
}

/// Invert the Helmholtz operator at (k, omega). Refuses near-singular
/// operators; lossless solves within [`ON_SHELL_DISTANCE_MIN`] of a real
/// propagating pole error out instead of being silently regularized.
pub fn solve_green_k<S: HelmholtzSource + ?Sized>(
    source: &S,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<GreenK> {
    let m = source.helmholtz(k, omega, kc)?;
    let sv = m.singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if smax == 0.0 {
        return Err(Error::SingularHelmholtz { cond: f64::INFINITY });
    }
    let distance = smin / smax;
    let lossless = (m - m.adjoint()).norm() <= 1e-12 * m.norm();
    if omega.im == 0.0 && lossless && distance < ON_SHELL_DISTANCE_MIN {
        return Err(Error::OnShellSingularity { distance });
    }
    let cond = if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    };
    if cond > HELMHOLTZ_COND_MAX {
        return Err(Error::SingularHelmholtz { cond });
    }
    let g = m
        .try_inverse()
        .ok_or(Error::SingularHelmholtz { cond })?;
    let id = identity3();
    let norm_id = 3.0_f64.sqrt();
    let right_residual = (m * g - id).norm() / norm_id;
    let left_residual = (g * m - id).norm() / norm_id;
    Ok(GreenK {
        tensor: g,
        k: *k,
        omega,
        right_residual,
        left_residual,
    })
}

/// Discrete Green matrix G = H^-1 / h with its residual |H G - I/h|.
#[derive(Debug, Clone)]
pub struct Green1D {
    pub matrix: CMatrix,
    pub omega: C64,
    pub n: usize,
    pub spacing: f64,
    pub residual: f64,
}

/// Dense solve of the discretized non-local Helmholtz problem.
pub fn solve_green_1d(kern: &Nonlocal1DKernel, omega: C64) -> Result<Green1D> {
    let (h_mat, _) = kern.matrices(omega)?;
    let h = kern.spacing();
    let inv = h_mat
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::SingularHelmholtz { cond: f64::INFINITY })?;
    let g = inv / cre(h);
    let target = CMatrix::identity(kern.len(), kern.len()) / cre(h);
    let residual = (&h_mat * &g - &target).norm() / target.norm();
    Ok(Green1D {
        matrix: g,
        omega,
        n: kern.len(),
        spacing: h,
        residual,
    })
}

/// The four Green blocks obtained by applying frequency and curl factors:
/// Gee = (iw/c) G (iw/c), Gem = (iw/c) G (-ik)x, Gme = (ik)x G (iw/c),
/// Gmm = (ik)x G (-ik)x.
#[derive(Debug, Clone)]
pub struct GreenBlocks {
    pub gee: CTensor3,
    pub gem: CTensor3,
    pub gme: CTensor3,
    pub gmm: CTensor3,
    pub k: Vector3<f64>,
    pub omega: C64,
}

impl GreenBlocks {
    pub fn from_green(g: &GreenK, kc: &PhysicalConstants) -> Self {
        let kx = cross_matrix_c(&g.k);
        let w_c = g.omega / cre(kc.c);
        let gee = g.tensor * (-(w_c * w_c));
        let gem = g.tensor * kx * w_c;
        let gme = -(kx * g.tensor) * w_c;
        let gmm = kx * g.tensor * kx;
        Self {
            gee,
            gem,
            gme,
            gmm,
            k: g.k,
            omega: g.omega,
        }
    }

    pub fn slots(&self) -> [&CTensor3; 4] {
        [&self.gee, &self.gem, &self.gme, &self.gmm]
    }

    /// The 6x6 block matrix relating the dual field pair to the noise
    /// pair: top row (Gee, Gem), bottom row
    /// (mu^-1 (Gme - xi Gee), mu^-1 (Gmm - xi Gem) + I).
    pub fn script_matrix(&self, rs: &ResponseSet) -> Result<CMatrix> {
        let mu_inv = rs.mu_inv()?;
        let bl = mu_inv * (self.gme - rs.xi * self.gee);
        let br = mu_inv * (self.gmm - rs.xi * self.gem) + identity3();
        Ok(crate::tensors::block2x2(&self.gee, &self.gem, &bl, &br))
    }
}

/// Green blocks plus the 6x6 block matrix for the medium.
pub fn green_blocks_k(
    g: &GreenK,
    rs: &ResponseSet,
    kc: &PhysicalConstants,
) -> Result<(GreenBlocks, CMatrix)> {
    let blocks = GreenBlocks::from_green(g, kc);
    let script = blocks.script_matrix(rs)?;
    Ok((blocks, script))
}

/// Onsager residual |G^T(-k, w) - G(k, w)| / |G(k, w)|: zero for
/// reciprocal media, order chi for Onsager-violating ones.
pub fn onsager_residual<S: HelmholtzSource + ?Sized>(
    source: &S,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<f64> {
    let g_plus = solve_green_k(source, k, omega, kc)?;
    let g_minus = solve_green_k(source, &(-k), omega, kc)?;
    let diff = (g_minus.tensor.transpose() - g_plus.tensor).norm();
    Ok(diff / g_plus.tensor.norm())
}

/// High-frequency asymptote residual |(w^2/c^2) G(k, w) + I|; decays as
/// omega grows past every resonance and |k| c.
pub fn asymptote_residual<S: HelmholtzSource + ?Sized>(
    source: &S,
    k: &Vector3<f64>,
    omega_large: f64,
    kc: &PhysicalConstants,
) -> Result<f64> {
    let g = solve_green_k(source, k, cre(omega_large), kc)?;
    let w_c = cre(omega_large / kc.c);
    Ok((g.tensor * (w_c * w_c) + identity3()).norm())
}

/// Schwarz reflection residual of the Green tensor,
/// |G(-k, -w*)* - G(k, w)| / |G(k, w)| (conjugation flips k together
/// with the frequency reflection).
pub fn schwarz_residual_green<S: HelmholtzSource + ?Sized>(
    source: &S,
    k: &Vector3<f64>,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<f64> {
    let direct = solve_green_k(source, k, omega, kc)?;
    let mirrored = solve_green_k(source, &(-k), -omega.conj(), kc)?;
    let refl = mirrored.tensor.map(|z| z.conj());
    Ok((refl - direct.tensor).norm() / direct.tensor.norm())
}
