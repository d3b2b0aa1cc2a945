//! Covariance-level quantization: noise covariances, their square roots
//! and the fluctuation-dissipation integral relation.
//!
//! Operators are represented by their covariance/commutator kernels only.
//! The noise-current commutator kernel in k-space is
//! (hbar w / pi) Re Q(k, w); at real positive frequencies the ground-state
//! anticommutator has the same kernel, so one tensor serves both
//! conventions. The noise polarization/magnetization covariance is the
//! 6x6 block matrix
//!
//! ```text
//! C = [ eps0 Im(eps - xi mu^-1 zeta)      (zeta† mu^-1† - xi mu^-1)/(2i Z0) ]
//!     [ (h.c. of the top-right block)     -Im(mu^-1)/mu0                    ]
//! ```
//!
//! (generalized, Hermitian, imaginary parts), whose principal square root
//! is the matrix-level image of the bosonic map. The integral relation
//!
//! ```text
//! mu0 w G ReQ G† = Im G
//! ```
//!
//! follows from the two-sided inverse property alone, so it survives the
//! loss of Onsager reciprocity; its residual is the headline diagnostic.

use nalgebra::Vector3;

use crate::conductivity::Nonlocal1DKernel;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::green::{solve_green_1d, solve_green_k, Green1D, GreenK, HelmholtzSource};
use crate::media::ResponseSet;
use crate::tensors::{
    antihermitian_part, block2x2, cre, hermitian_part, is_psd, psd_root, tensor_to_dmatrix,
    CMatrix, CTensor3, C64,
};

/// Relative PSD tolerance for physics validation (distinguishes roundoff
/// from genuine passivity violations).
pub const PSD_TOL_FACTOR: f64 = 1e-10;

fn require_real_positive(omega: C64) -> Result<f64> {
    if omega.im != 0.0 || !omega.re.is_finite() || omega.re <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "covariance kernels are defined at real omega > 0, got {omega}"
        )));
    }
    Ok(omega.re)
}

/// 6x6 noise polarization/magnetization covariance at one real frequency.
#[derive(Debug, Clone)]
pub struct NoiseCovariance6 {
    pub matrix: CMatrix,
    pub omega: f64,
}

impl NoiseCovariance6 {
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(is_psd(&self.matrix, f64::INFINITY)?.min_eigenvalue)
    }
}

/// Assemble the 6x6 covariance block matrix from the responses;
/// Hermiticity is enforced by symmetrizing the roundoff.
pub fn noise_pm_covariance(rs: &ResponseSet, kc: &PhysicalConstants) -> Result<NoiseCovariance6> {
    let omega = require_real_positive(rs.omega)?;
    let mu_inv = rs.mu_inv()?;
    let a = rs.eps - rs.xi * mu_inv * rs.zeta;
    let tl = antihermitian_part(&a) * cre(kc.eps0);
    let tr = (rs.zeta.adjoint() * mu_inv.adjoint() - rs.xi * mu_inv) / c2i(kc.z0);
    let bl = tr.adjoint();
    let br = antihermitian_part(&mu_inv) * cre(-1.0 / kc.mu0);
    let matrix = hermitian_part(&block2x2(&tl, &tr, &bl, &br));
    Ok(NoiseCovariance6 { matrix, omega })
}

fn c2i(z0: f64) -> C64 {
    C64::new(0.0, 2.0 * z0)
}

/// Principal PSD root R of the noise covariance, R R† = C. A genuinely
/// negative eigenvalue flags a non-passive medium, for which the
/// square-root quantization map breaks down.
pub fn noise_root(rs: &ResponseSet, kc: &PhysicalConstants) -> Result<CMatrix> {
    let cov = noise_pm_covariance(rs, kc)?;
    psd_root(&cov.matrix).map_err(|e| match e {
        Error::NotPositiveSemidefinite { min_eigenvalue } => {
            Error::NonPassiveMedium { min_eigenvalue }
        }
        other => other,
    })
}

/// Noise-current commutator kernel (hbar w / pi) Re Q(k, w); at real
/// w > 0 the ground-state anticommutator shares this kernel.
#[derive(Debug, Clone)]
pub struct CurrentCovarianceK {
    pub tensor: CTensor3,
    pub omega: f64,
}

pub fn current_covariance_k(
    q_tensor: &CTensor3,
    omega: C64,
    kc: &PhysicalConstants,
) -> Result<CurrentCovarianceK> {
    let w = require_real_positive(omega)?;
    Ok(CurrentCovarianceK {
        tensor: hermitian_part(q_tensor) * cre(kc.hbar * w / std::f64::consts::PI),
        omega: w,
    })
}

/// Relative residual of the k-space integral relation
/// |mu0 w G ReQ G† - Im G| / |Im G| (absolute when Im G is numerically
/// zero, as for lossless media off shell).
pub fn integral_relation_residual_k<S: HelmholtzSource + ?Sized>(
    source: &S,
    k: &Vector3<f64>,
    omega: f64,
    kc: &PhysicalConstants,
) -> Result<f64> {
    require_real_positive(cre(omega))?;
    let g = solve_green_k(source, k, cre(omega), kc)?;
    let q = source.conductivity(k, cre(omega), kc)?;
    let lhs = g.tensor * hermitian_part(&q) * g.tensor.adjoint() * cre(kc.mu0 * omega);
    let rhs = antihermitian_part(&g.tensor);
    let denom = rhs.norm();
    Ok(residual_against((lhs - rhs).norm(), denom, g.tensor.norm()))
}

// Relative residual, except when the reference side is lossless-small
// (pure roundoff dust): then normalize by the Green norm instead so the
// "both sides vanish" case reads as a clean zero at any matrix size.
fn residual_against(diff: f64, denom: f64, green_scale: f64) -> f64 {
    if denom < 1e-13 * green_scale.max(1.0) {
        diff / green_scale.max(1.0)
    } else {
        diff / denom
    }
}

/// Discrete integral relation |mu0 w h G ReQ G† - Im G| (relative). The
/// factor h is the quadrature weight of the double integral that the
/// matrix product discretizes; with it the identity is exact linear
/// algebra, since H - H† = -2i mu0 w ReQ for real w.
pub fn integral_relation_residual_1d(kern: &Nonlocal1DKernel, omega: f64) -> Result<f64> {
    require_real_positive(cre(omega))?;
    let g = solve_green_1d(kern, cre(omega))?;
    let (_, q) = kern.matrices(cre(omega))?;
    let kc = kern.constants();
    let lhs =
        &g.matrix * hermitian_part(&q) * g.matrix.adjoint() * cre(kc.mu0 * omega * g.spacing);
    let rhs = antihermitian_part(&g.matrix);
    let denom = rhs.norm();
    Ok(residual_against((lhs - rhs).norm(), denom, g.matrix.norm()))
}

/// Electric-field fluctuation spectrum at one (k, w),
/// S = (hbar mu0 w^2 / pi) Im G; validated Hermitian PSD.
#[derive(Debug, Clone)]
pub struct FieldSpectrumK {
    pub tensor: CTensor3,
    pub omega: f64,
    pub min_eigenvalue: f64,
}

pub fn field_fluctuation_spectrum_k(g: &GreenK, kc: &PhysicalConstants) -> Result<FieldSpectrumK> {
    let w = require_real_positive(g.omega)?;
    let prefactor = kc.hbar * kc.mu0 * w * w / std::f64::consts::PI;
    let tensor = antihermitian_part(&g.tensor) * cre(prefactor);
    let min_eigenvalue =
        validate_spectrum(&tensor_to_dmatrix(&tensor), prefactor * g.tensor.norm())?;
    Ok(FieldSpectrumK {
        tensor,
        omega: w,
        min_eigenvalue,
    })
}

/// Second computation route for the spectrum, through the conductivity
/// kernel: S = (hbar / pi) mu0^2 w^3 G ReQ G†. Agrees with
/// [`field_fluctuation_spectrum_k`] by the integral relation.
pub fn spectrum_via_kernel_k(
    g: &GreenK,
    q_tensor: &CTensor3,
    kc: &PhysicalConstants,
) -> Result<CTensor3> {
    let w = require_real_positive(g.omega)?;
    Ok(g.tensor
        * hermitian_part(q_tensor)
        * g.tensor.adjoint()
        * cre(kc.hbar * kc.mu0 * kc.mu0 * w * w * w / std::f64::consts::PI))
}

/// Discrete field fluctuation spectrum on the 1-D grid.
#[derive(Debug, Clone)]
pub struct FieldSpectrum1D {
    pub matrix: CMatrix,
    pub omega: f64,
    pub min_eigenvalue: f64,
}

pub fn field_fluctuation_spectrum_1d(
    g: &Green1D,
    kc: &PhysicalConstants,
) -> Result<FieldSpectrum1D> {
    let w = require_real_positive(g.omega)?;
    let prefactor = kc.hbar * kc.mu0 * w * w / std::f64::consts::PI;
    let matrix = antihermitian_part(&g.matrix) * cre(prefactor);
    let min_eigenvalue = validate_spectrum(&matrix, prefactor * g.matrix.norm())?;
    Ok(FieldSpectrum1D {
        matrix,
        omega: w,
        min_eigenvalue,
    })
}

/// Kernel route on the grid; the extra h is the quadrature weight.
pub fn spectrum_via_kernel_1d(
    g: &Green1D,
    q: &CMatrix,
    kc: &PhysicalConstants,
) -> Result<CMatrix> {
    let w = require_real_positive(g.omega)?;
    Ok(&g.matrix
        * hermitian_part(q)
        * g.matrix.adjoint()
        * cre(kc.hbar * kc.mu0 * kc.mu0 * w * w * w * g.spacing / std::f64::consts::PI))
}

// PSD gate with the tolerance floored at the natural spectrum scale
// (prefactor times the Green norm), so a lossless spectrum made of pure
// roundoff dust passes instead of tripping on its own noise.
fn validate_spectrum(s: &CMatrix, scale_floor: f64) -> Result<f64> {
    let report = is_psd(s, PSD_TOL_FACTOR * s.norm().max(scale_floor).max(1e-300))?;
    if !report.is_psd {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    Ok(report.min_eigenvalue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductivity::local_conductivity_k;
    use crate::media::{random_passive_model, MediumModel};
    use crate::tensors::{c64, cross_matrix, rel_diff, scalar3};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    use crate::testutil::{random_k, random_response_set};

    fn kc() -> PhysicalConstants {
        PhysicalConstants::scaled()
    }

    #[test]
    fn vacuum_covariance_is_zero() {
        let cov = noise_pm_covariance(&ResponseSet::vacuum(cre(1.0)), &kc()).unwrap();
        assert!(cov.matrix.norm() < 1e-15);
        let root = noise_root(&ResponseSet::vacuum(cre(1.0)), &kc()).unwrap();
        assert!(root.norm() < 1e-12);
    }

    #[test]
    fn decoupled_media_have_exactly_block_diagonal_covariance() {
        // xi = zeta = 0: the noise polarization and magnetization commute,
        // so the off-diagonal blocks vanish identically.
        let rs = ResponseSet::new(
            scalar3(c64(2.0, 0.5)) + CTensor3::from_fn(|r, c| cre(0.1 * (r as f64 - c as f64))),
            CTensor3::zeros(),
            CTensor3::zeros(),
            scalar3(c64(1.5, 0.2)),
            cre(0.9),
        );
        let cov = noise_pm_covariance(&rs, &kc()).unwrap();
        for r in 0..3 {
            for c in 3..6 {
                assert_eq!(cov.matrix[(r, c)], C64::ZERO);
                assert_eq!(cov.matrix[(c, r)], C64::ZERO);
            }
        }
    }

    #[test]
    fn lossy_isotropic_covariance_and_root_are_analytic() {
        let rs = ResponseSet::new(
            scalar3(c64(2.0, 0.5)),
            CTensor3::zeros(),
            CTensor3::zeros(),
            CTensor3::identity(),
            cre(1.0),
        );
        let cov = noise_pm_covariance(&rs, &kc()).unwrap();
        // top-left eps0 * Im(eps) = 0.5 I, everything else zero
        for r in 0..6 {
            for c in 0..6 {
                let expect = if r == c && r < 3 { cre(0.5) } else { C64::ZERO };
                assert!((cov.matrix[(r, c)] - expect).norm() < 1e-14);
            }
        }
        let root = noise_root(&rs, &kc()).unwrap();
        for r in 0..6 {
            let expect = if r < 3 { cre(0.5_f64.sqrt()) } else { C64::ZERO };
            assert!((root[(r, r)] - expect).norm() < 1e-12);
        }
        let rec = &root * root.adjoint();
        assert!(rel_diff(&rec, &cov.matrix) < 1e-10);
    }

    #[test]
    fn covariance_is_hermitian_for_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let w = cre(rng.random_range(0.2..2.0));
            let rs = random_response_set(&mut rng, w);
            let cov = noise_pm_covariance(&rs, &kc()).unwrap();
            assert!(crate::tensors::hermiticity_residual(&cov.matrix) < 1e-13);
        }
    }

    #[test]
    fn current_covariance_congruent_to_noise_covariance() {
        // Re Q(k, w) = w [I, K/w] C [I, K/w]† ties the k-space commutator
        // kernel to the 6x6 covariance; holds for arbitrary responses.
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..40 {
            let w = rng.random_range(0.2..2.5);
            let rs = random_response_set(&mut rng, cre(w));
            let k = random_k(&mut rng, 1.5);
            let q = local_conductivity_k(&rs, &k, cre(w), &kc()).unwrap();
            let herm_q = tensor_to_dmatrix(&hermitian_part(&q));

            let cov = noise_pm_covariance(&rs, &kc()).unwrap();
            let kx = cross_matrix(&k);
            let mut u = CMatrix::zeros(3, 6);
            for r in 0..3 {
                u[(r, r)] = cre(1.0);
                for c in 0..3 {
                    u[(r, c + 3)] = cre(kx[(r, c)] / w);
                }
            }
            let congruent = &u * &cov.matrix * u.adjoint() * cre(w);
            assert!(
                rel_diff(&congruent, &herm_q) < 1e-12,
                "congruence residual {:.3e}",
                rel_diff(&congruent, &herm_q)
            );
        }
    }

    #[test]
    fn random_passive_models_pass_all_psd_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let model = random_passive_model(&mut rng);
            for w in [0.3, 0.8, 1.1, 2.4] {
                let rs = model.evaluate(cre(w)).unwrap();
                let cov = noise_pm_covariance(&rs, &kc()).unwrap();
                let min = cov.min_eigenvalue().unwrap();
                assert!(
                    min >= -PSD_TOL_FACTOR * cov.matrix.norm().max(1.0),
                    "covariance min eig {min:.3e} at w = {w}"
                );
                let root = noise_root(&rs, &kc()).unwrap();
                let rec = &root * root.adjoint();
                assert!(rel_diff(&rec, &cov.matrix) < 1e-10);

                // k-space dissipation kernel inherits PSD via congruence
                let k = random_k(&mut rng, 1.5);
                let q = local_conductivity_k(&rs, &k, cre(w), &kc()).unwrap();
                let cck = current_covariance_k(&q, cre(w), &kc()).unwrap();
                let rep = is_psd(
                    &tensor_to_dmatrix(&cck.tensor),
                    1e-10 * cck.tensor.norm().max(1.0),
                )
                .unwrap();
                assert!(rep.is_psd, "current covariance min {:.3e}", rep.min_eigenvalue);
            }
        }
    }

    #[test]
    fn strong_coupling_without_loss_is_flagged_non_passive() {
        // Lossy magnetoelectric coupling with a lossless mu has no magnetic
        // dissipation channel to balance it: the covariance picks up an
        // off-diagonal block with a zero diagonal partner, is indefinite,
        // and the root must refuse.
        let chi = scalar3(c64(0.4, 0.4));
        let rs = ResponseSet::new(
            scalar3(c64(2.0, 0.05)),
            chi,
            chi,
            CTensor3::identity(),
            cre(1.0),
        );
        match noise_root(&rs, &kc()) {
            Err(Error::NonPassiveMedium { min_eigenvalue }) => {
                assert!(min_eigenvalue < 0.0);
            }
            other => panic!("expected non-passive error, got {other:?}"),
        }
    }

    #[test]
    fn integral_relation_holds_in_k_space() {
        let ks = [
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 0.7, 0.0),
            Vector3::new(0.5, -0.4, 0.8),
        ];
        let omegas = [0.4, 0.9, 1.6];
        for (name, m) in MediumModel::zoo() {
            if name == "vacuum" {
                continue;
            }
            for k in &ks {
                for &w in &omegas {
                    let r = integral_relation_residual_k(&m, k, w, &kc()).unwrap();
                    assert!(r <= 1e-10, "{name} k={k:?} w={w}: residual {r:.3e}");
                }
            }
        }
        // vacuum off shell: both sides vanish, absolute residual
        let r = integral_relation_residual_k(
            &MediumModel::vacuum(),
            &Vector3::new(1.0, 0.0, 0.0),
            0.5,
            &kc(),
        )
        .unwrap();
        assert!(r <= 1e-13);
    }

    #[test]
    fn integral_relation_includes_onsager_violating_media() {
        // The generalized-parts form of the relation survives the loss of
        // reciprocity: same residual scale for the Tellegen fixtures.
        let k = Vector3::new(0.6, 0.8, 0.3);
        for m in [MediumModel::tellegen(), MediumModel::tellegen_anisotropic()] {
            for w in [0.5, 1.0, 2.0] {
                let r = integral_relation_residual_k(&m, &k, w, &kc()).unwrap();
                assert!(r <= 1e-10, "{}: residual {r:.3e}", m.name);
            }
        }
    }

    #[test]
    fn integral_relation_discrete_is_exact() {
        let lossless = Nonlocal1DKernel::new(32, 10.0, 0.7, 0.0, 0.2, kc()).unwrap();
        let r = integral_relation_residual_1d(&lossless, 0.37).unwrap();
        assert!(r <= 1e-13, "lossless absolute residual {r:.3e}");

        for n in [32, 64, 128] {
            let kern = Nonlocal1DKernel::new(n, 10.0, 0.7, 1.0, 0.3, kc()).unwrap();
            for w in [0.5, 1.0, 2.0] {
                let r = integral_relation_residual_1d(&kern, w).unwrap();
                assert!(r <= 1e-11, "N={n} w={w}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn spectrum_routes_agree_and_are_psd() {
        let k = Vector3::new(0.7, -0.3, 0.2);
        for (name, m) in MediumModel::zoo() {
            for w in [0.6, 1.2] {
                let g = solve_green_k(&m, &k, cre(w), &kc()).unwrap();
                let s1 = field_fluctuation_spectrum_k(&g, &kc()).unwrap();
                let q = m.conductivity(&k, cre(w), &kc()).unwrap();
                let s2 = spectrum_via_kernel_k(&g, &q, &kc()).unwrap();
                let denom = s1.tensor.norm().max(1e-14);
                let rel = (s1.tensor - s2).norm() / denom;
                assert!(rel <= 1e-10 || (s1.tensor - s2).norm() <= 1e-12,
                    "{name} w={w}: spectrum routes differ by {rel:.3e}");
                assert!(s1.min_eigenvalue >= -1e-10 * s1.tensor.norm().max(1.0));
            }
        }
    }

    #[test]
    fn vacuum_spectrum_vanishes_off_shell() {
        let g = solve_green_k(
            &MediumModel::vacuum(),
            &Vector3::new(1.0, 0.0, 0.0),
            cre(0.5),
            &kc(),
        )
        .unwrap();
        let s = field_fluctuation_spectrum_k(&g, &kc()).unwrap();
        assert!(s.tensor.norm() < 1e-14);
    }

    #[test]
    fn drude_slab_spectrum_is_psd_with_positive_trace() {
        let kern = Nonlocal1DKernel::new(64, 10.0, 0.7, 1.0, 0.3, kc()).unwrap();
        let g = solve_green_1d(&kern, cre(1.0)).unwrap();
        let s = field_fluctuation_spectrum_1d(&g, &kc()).unwrap();
        assert!(s.min_eigenvalue >= -1e-12 * s.matrix.norm());
        let trace: f64 = (0..s.matrix.nrows()).map(|i| s.matrix[(i, i)].re).sum();
        assert!(trace > 0.0);

        let s2 = spectrum_via_kernel_1d(&g, &kern.matrices(cre(1.0)).unwrap().1, &kc()).unwrap();
        assert!(rel_diff(&s2, &s.matrix) <= 1e-10);
    }

    #[test]
    fn lossless_1d_spectrum_is_numerically_zero_and_accepted() {
        let kern = Nonlocal1DKernel::new(32, 10.0, 0.7, 0.0, 0.2, kc()).unwrap();
        let g = solve_green_1d(&kern, cre(0.37)).unwrap();
        let s = field_fluctuation_spectrum_1d(&g, &kc()).unwrap();
        assert!(s.matrix.norm() <= 1e-10 * g.matrix.norm());
    }

    #[test]
    fn spectrum_scales_linearly_in_hbar() {
        let mut units = kc();
        let kern = Nonlocal1DKernel::new(32, 10.0, 0.7, 1.0, 0.3, units).unwrap();
        let g = solve_green_1d(&kern, cre(1.0)).unwrap();
        let s1 = field_fluctuation_spectrum_1d(&g, &units).unwrap();
        units.hbar *= 2.0;
        let s2 = field_fluctuation_spectrum_1d(&g, &units).unwrap();
        assert!(rel_diff(&s2.matrix, &(s1.matrix.clone() * cre(2.0))) < 1e-15);
    }

    #[test]
    fn covariance_requires_real_positive_frequency() {
        let rs = ResponseSet::vacuum(c64(1.0, 0.5));
        assert!(noise_pm_covariance(&rs, &kc()).is_err());
        let rs = ResponseSet::vacuum(cre(-1.0));
        assert!(noise_pm_covariance(&rs, &kc()).is_err());
    }

    #[test]
    fn spectrum_consistency_restated_identity() {
        // antiherm(mu0 w^2 G) = mu0^2 w^3 G ReQ G† checked directly.
        let m = MediumModel::isotropic_chiral();
        let k = Vector3::new(0.4, 0.2, -0.6);
        let w = 1.1;
        let g = solve_green_k(&m, &k, cre(w), &kc()).unwrap();
        let q = m.conductivity(&k, cre(w), &kc()).unwrap();
        let lhs = antihermitian_part(&(g.tensor * cre(w * w)));
        let rhs = g.tensor * hermitian_part(&q) * g.tensor.adjoint() * cre(w * w * w);
        assert!(rel_diff(&lhs, &rhs) <= 1e-10);
    }
}
