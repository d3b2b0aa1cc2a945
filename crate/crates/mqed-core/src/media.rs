//! Parametric causal dispersion models of local bianisotropic media.
//!
//! A medium is described by four 3x3 response tensors at each frequency:
//! permittivity eps, permeability mu and the magnetoelectric pair (xi,
//! zeta). The magnetoelectric responses split into a reciprocal chirality
//! tensor kappa and a non-reciprocal tensor chi,
//!
//! ```text
//! xi = chi^T - i kappa^T,      zeta = chi + i kappa,
//! kappa = (zeta - xi^T)/(2i),  chi = (zeta + xi^T)/2 .
//! ```
//!
//! Diagonal entries are sums of Lorentz resonances; kappa uses the Condon
//! form with an odd-in-omega numerator so that all four response slots
//! obey the Schwarz reflection principle T(-w*) = T(w)*.

use nalgebra::{Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensors::{c64, condition_number3, cre, scalar3, CTensor3, C64};

/// Condition-number bound above which mu is treated as singular.
pub const MU_COND_MAX: f64 = 1e12;
/// Default relative tolerance for classification predicates.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// The four local response tensors of a medium at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseSet {
    pub eps: CTensor3,
    pub xi: CTensor3,
    pub zeta: CTensor3,
    pub mu: CTensor3,
    pub omega: C64,
}

impl ResponseSet {
    pub fn new(eps: CTensor3, xi: CTensor3, zeta: CTensor3, mu: CTensor3, omega: C64) -> Self {
        Self {
            eps,
            xi,
            zeta,
            mu,
            omega,
        }
    }

    pub fn vacuum(omega: C64) -> Self {
        Self::new(
            CTensor3::identity(),
            CTensor3::zeros(),
            CTensor3::zeros(),
            CTensor3::identity(),
            omega,
        )
    }

    /// Inverse permeability; errors when mu is numerically singular.
    pub fn mu_inv(&self) -> Result<CTensor3> {
        let cond = condition_number3(&self.mu);
        if !cond.is_finite() || cond > MU_COND_MAX {
            return Err(Error::InvalidModel(format!(
                "permeability tensor singular (condition estimate {cond:.3e})"
            )));
        }
        self.mu
            .try_inverse()
            .ok_or_else(|| Error::InvalidModel("permeability tensor not invertible".into()))
    }

    /// Largest Frobenius norm among the four slots; scale for tolerances.
    pub fn norm_scale(&self) -> f64 {
        self.eps
            .norm()
            .max(self.xi.norm())
            .max(self.zeta.norm())
            .max(self.mu.norm())
    }

    pub fn slots(&self) -> [&CTensor3; 4] {
        [&self.eps, &self.xi, &self.zeta, &self.mu]
    }
}

/// kappa = (zeta - xi^T)/(2i), chi = (zeta + xi^T)/2.
pub fn decompose_magnetoelectric(rs: &ResponseSet) -> (CTensor3, CTensor3) {
    let xi_t = rs.xi.transpose();
    let kappa = (rs.zeta - xi_t) * c64(0.0, -0.5);
    let chi = (rs.zeta + xi_t) * cre(0.5);
    (kappa, chi)
}

/// Inverse of [`decompose_magnetoelectric`]: xi = chi^T - i kappa^T,
/// zeta = chi + i kappa.
pub fn recompose_magnetoelectric(kappa: &CTensor3, chi: &CTensor3) -> (CTensor3, CTensor3) {
    let xi = chi.transpose() - kappa.transpose() * c64(0.0, 1.0);
    let zeta = chi + kappa * c64(0.0, 1.0);
    (xi, zeta)
}

/// Structural class of a medium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MediumClassKind {
    Vacuum,
    Isotropic,
    Biisotropic,
    Anisotropic,
    Bianisotropic,
}

impl std::fmt::Display for MediumClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MediumClassKind::Vacuum => "vacuum",
            MediumClassKind::Isotropic => "isotropic",
            MediumClassKind::Biisotropic => "biisotropic",
            MediumClassKind::Anisotropic => "anisotropic",
            MediumClassKind::Bianisotropic => "bianisotropic",
        };
        f.write_str(s)
    }
}

/// Classification result: structural class plus reciprocity flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MediumClass {
    pub kind: MediumClassKind,
    pub reciprocal: bool,
    pub nonreciprocal_magnetoelectric: bool,
}

/// Classify a response set by the structural predicates:
/// isotropic = scalar eps, mu with xi = zeta = 0; biisotropic = all four
/// scalar; anisotropic = xi = zeta = 0 with non-scalar eps or mu;
/// reciprocal = (eps^T = eps, xi^T = -zeta, mu^T = mu).
pub fn classify(rs: &ResponseSet, tol: f64) -> MediumClass {
    let atol = tol * rs.norm_scale().max(1.0);
    let is_zero = |t: &CTensor3| t.norm() <= atol;
    let is_scalar = |t: &CTensor3| {
        let mean = (t[(0, 0)] + t[(1, 1)] + t[(2, 2)]) / cre(3.0);
        (t - scalar3(mean)).norm() <= atol
    };
    let is_identity = |t: &CTensor3| (t - CTensor3::identity()).norm() <= atol;

    let me_zero = is_zero(&rs.xi) && is_zero(&rs.zeta);
    let eps_scalar = is_scalar(&rs.eps);
    let mu_scalar = is_scalar(&rs.mu);

    let kind = if me_zero && is_identity(&rs.eps) && is_identity(&rs.mu) {
        MediumClassKind::Vacuum
    } else if me_zero && eps_scalar && mu_scalar {
        MediumClassKind::Isotropic
    } else if eps_scalar && mu_scalar && is_scalar(&rs.xi) && is_scalar(&rs.zeta) {
        MediumClassKind::Biisotropic
    } else if me_zero {
        MediumClassKind::Anisotropic
    } else {
        MediumClassKind::Bianisotropic
    };

    let reciprocal = (rs.eps.transpose() - rs.eps).norm() <= atol
        && (rs.xi.transpose() + rs.zeta).norm() <= atol
        && (rs.mu.transpose() - rs.mu).norm() <= atol;
    let (_, chi) = decompose_magnetoelectric(rs);
    let nonreciprocal_magnetoelectric = chi.norm() > atol;

    MediumClass {
        kind,
        reciprocal,
        nonreciprocal_magnetoelectric,
    }
}

/// One resonance {amplitude = wp^2, resonance = wT, damping = gamma}.
///
/// Lorentz contribution: amplitude / (wT^2 - w^2 - i gamma w).
/// Condon contribution (kappa): amplitude * w / (wT^2 - w^2 - i gamma w).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceTerm {
    pub amplitude: f64,
    pub resonance: f64,
    pub damping: f64,
}

impl ResonanceTerm {
    pub fn new(amplitude: f64, resonance: f64, damping: f64) -> Self {
        Self {
            amplitude,
            resonance,
            damping,
        }
    }

    fn denominator(&self, omega: C64) -> C64 {
        cre(self.resonance * self.resonance) - omega * omega - c64(0.0, self.damping) * omega
    }

    fn lorentz(&self, omega: C64) -> C64 {
        cre(self.amplitude) / self.denominator(omega)
    }

    fn condon(&self, omega: C64) -> C64 {
        cre(self.amplitude) * omega / self.denominator(omega)
    }
}

/// Fixed rotation applied to all four response tensors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    pub axis: [f64; 3],
    pub angle: f64,
}

/// Constant structural anisotropy: per-axis weights multiplying each
/// susceptibility, plus an optional rigid rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Anisotropy {
    #[serde(default = "unit_axis")]
    pub eps_axis: [f64; 3],
    #[serde(default = "unit_axis")]
    pub mu_axis: [f64; 3],
    #[serde(default = "unit_axis")]
    pub kappa_axis: [f64; 3],
    #[serde(default = "unit_axis")]
    pub chi_axis: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<RotationSpec>,
}

fn unit_axis() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

impl Default for Anisotropy {
    fn default() -> Self {
        Self {
            eps_axis: unit_axis(),
            mu_axis: unit_axis(),
            kappa_axis: unit_axis(),
            chi_axis: unit_axis(),
            rotation: None,
        }
    }
}

pub const MODEL_SCHEMA_VERSION: u32 = 1;

/// Parametric causal dispersion model; evaluates to a [`ResponseSet`]
/// satisfying Schwarz reflection by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumModel {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub eps: Vec<ResonanceTerm>,
    #[serde(default)]
    pub mu: Vec<ResonanceTerm>,
    #[serde(default)]
    pub kappa: Vec<ResonanceTerm>,
    #[serde(default)]
    pub chi: Vec<ResonanceTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anisotropy: Option<Anisotropy>,
}

impl MediumModel {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            schema_version: MODEL_SCHEMA_VERSION,
            name: name.into(),
            eps: Vec::new(),
            mu: Vec::new(),
            kappa: Vec::new(),
            chi: Vec::new(),
            anisotropy: None,
        }
    }

    /// Parse and validate a model from JSON text.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let model: MediumModel = serde_json::from_str(text).map_err(|e| {
            Error::ModelParse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        model.validate()?;
        Ok(model)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ModelParse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialization cannot fail")
    }

    /// Schema checks: positive damping, non-negative amplitudes, sane
    /// anisotropy, supported schema version.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != MODEL_SCHEMA_VERSION {
            return Err(Error::ModelParse(format!(
                "unsupported schema_version {} (expected {MODEL_SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        for (slot, terms) in [
            ("eps", &self.eps),
            ("mu", &self.mu),
            ("kappa", &self.kappa),
            ("chi", &self.chi),
        ] {
            for (i, t) in terms.iter().enumerate() {
                if !t.damping.is_finite() || t.damping <= 0.0 {
                    return Err(Error::ModelParse(format!(
                        "{slot}[{i}]: damping must be strictly positive (absorbing medium), got {}",
                        t.damping
                    )));
                }
                if t.amplitude < 0.0 || !t.amplitude.is_finite() {
                    return Err(Error::ModelParse(format!(
                        "{slot}[{i}]: amplitude must be finite and >= 0, got {}",
                        t.amplitude
                    )));
                }
                if t.resonance < 0.0 || !t.resonance.is_finite() {
                    return Err(Error::ModelParse(format!(
                        "{slot}[{i}]: resonance must be finite and >= 0, got {}",
                        t.resonance
                    )));
                }
            }
        }
        if let Some(a) = &self.anisotropy {
            for (name, axis) in [
                ("eps_axis", a.eps_axis),
                ("mu_axis", a.mu_axis),
                ("kappa_axis", a.kappa_axis),
                ("chi_axis", a.chi_axis),
            ] {
                if axis.iter().any(|v| !v.is_finite()) {
                    return Err(Error::ModelParse(format!("{name}: entries must be finite")));
                }
            }
            if let Some(rot) = &a.rotation {
                let n = Vector3::from(rot.axis).norm();
                if !n.is_finite() || n == 0.0 || !rot.angle.is_finite() {
                    return Err(Error::ModelParse(
                        "rotation: axis must be non-zero and angle finite".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn rotation_matrix(&self) -> Option<nalgebra::Matrix3<f64>> {
        self.anisotropy
            .as_ref()
            .and_then(|a| a.rotation.as_ref())
            .map(|r| {
                Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::from(r.axis)), r.angle)
                    .into_inner()
            })
    }

    /// Evaluate the model at a frequency in the closed upper half-plane.
    pub fn evaluate(&self, omega: C64) -> Result<ResponseSet> {
        if omega.im < -1e-15 {
            return Err(Error::InvalidInput(format!(
                "omega must lie in the closed upper half-plane, got {omega}"
            )));
        }
        let chi_e: C64 = self.eps.iter().map(|t| t.lorentz(omega)).sum();
        let chi_m: C64 = self.mu.iter().map(|t| t.lorentz(omega)).sum();
        let kappa_s: C64 = self.kappa.iter().map(|t| t.condon(omega)).sum();
        let chi_s: C64 = self.chi.iter().map(|t| t.lorentz(omega)).sum();

        let aniso = self.anisotropy.clone().unwrap_or_default();
        let diag = |axis: [f64; 3], s: C64| {
            CTensor3::from_diagonal(&nalgebra::Vector3::new(
                cre(axis[0]) * s,
                cre(axis[1]) * s,
                cre(axis[2]) * s,
            ))
        };

        let mut eps = CTensor3::identity() + diag(aniso.eps_axis, chi_e);
        let mut mu = CTensor3::identity() + diag(aniso.mu_axis, chi_m);
        let mut kappa = diag(aniso.kappa_axis, kappa_s);
        let mut chi = diag(aniso.chi_axis, chi_s);

        if let Some(rot) = self.rotation_matrix() {
            let r = rot.map(cre);
            let rt = rot.transpose().map(cre);
            eps = r * eps * rt;
            mu = r * mu * rt;
            kappa = r * kappa * rt;
            chi = r * chi * rt;
        }

        let (xi, zeta) = recompose_magnetoelectric(&kappa, &chi);
        let rs = ResponseSet::new(eps, xi, zeta, mu, omega);
        if !rs.slots().iter().all(|t| crate::tensors::all_finite(*t)) {
            return Err(Error::InvalidModel(format!(
                "model '{}' evaluates to non-finite responses at omega = {omega}",
                self.name
            )));
        }
        rs.mu_inv()?;
        Ok(rs)
    }

    /// Smallest and largest resonance scales over all terms, when any.
    pub fn resonance_range(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for t in self
            .eps
            .iter()
            .chain(&self.mu)
            .chain(&self.kappa)
            .chain(&self.chi)
        {
            let scale = if t.resonance > 0.0 {
                t.resonance
            } else {
                t.damping
            };
            lo = lo.min(scale);
            hi = hi.max(scale);
        }
        if hi > 0.0 {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Maximum Schwarz-reflection residual over the grid, all four slots.
    pub fn schwarz_residual(&self, omega_grid: &[C64]) -> Result<f64> {
        schwarz_check(|w| self.evaluate(w), omega_grid)
    }
}

/// Max over the grid of |eval(-w*)* - eval(w)| across all four response
/// slots. Well-formed causal models stay below 1e-12.
pub fn schwarz_check<F>(eval: F, omega_grid: &[C64]) -> Result<f64>
where
    F: Fn(C64) -> Result<ResponseSet>,
{
    let mut max_residual: f64 = 0.0;
    for &omega in omega_grid {
        if omega.im < -1e-15 {
            return Err(Error::InvalidInput(format!(
                "Schwarz grid point {omega} below the real axis"
            )));
        }
        let direct = eval(omega)?;
        let mirrored = eval(-omega.conj())?;
        for (a, b) in mirrored.slots().into_iter().zip(direct.slots()) {
            let refl = a.map(|z| z.conj());
            max_residual = max_residual.max((refl - b).norm());
        }
    }
    Ok(max_residual)
}

// ---------------------------------------------------------------------------
// Fixture zoo
// ---------------------------------------------------------------------------

impl MediumModel {
    /// Empty model: responses are exactly (I, 0, 0, I) at every frequency.
    pub fn vacuum() -> Self {
        Self::new("vacuum")
    }

    /// Scalar Lorentz dielectric, eps(0) = 2.
    pub fn lorentz_dielectric() -> Self {
        let mut m = Self::new("lorentz-dielectric");
        m.eps = vec![ResonanceTerm::new(1.0, 1.0, 0.1)];
        m
    }

    /// Scalar Lorentz magnetic medium.
    pub fn lorentz_magnetic() -> Self {
        let mut m = Self::new("lorentz-magnetic");
        m.mu = vec![ResonanceTerm::new(0.8, 1.2, 0.15)];
        m
    }

    /// Uniaxial dielectric: diagonal eps with a distinct z axis.
    pub fn uniaxial_dielectric() -> Self {
        let mut m = Self::new("uniaxial-dielectric");
        m.eps = vec![ResonanceTerm::new(1.0, 1.0, 0.1)];
        m.anisotropy = Some(Anisotropy {
            eps_axis: [1.0, 1.0, 1.8],
            ..Anisotropy::default()
        });
        m
    }

    /// Isotropic chiral medium: lossy eps, mu plus a Condon kappa. The
    /// Condon cross-loss decays one power of omega slower than the
    /// diagonal losses, so any single-resonance chiral model loses
    /// passivity above roughly sqrt(A_eps A_mu)/A_kappa; the amplitude is
    /// kept small enough that this sits far outside the default grid.
    pub fn isotropic_chiral() -> Self {
        let mut m = Self::new("isotropic-chiral");
        m.eps = vec![ResonanceTerm::new(1.0, 1.0, 0.2)];
        m.mu = vec![ResonanceTerm::new(0.8, 1.0, 0.2)];
        m.kappa = vec![ResonanceTerm::new(0.03, 1.0, 0.2)];
        m
    }

    /// Biisotropic Tellegen medium with chi(0) = 0.3.
    pub fn tellegen() -> Self {
        let mut m = Self::new("tellegen");
        m.eps = vec![ResonanceTerm::new(1.2, 1.0, 0.3)];
        m.mu = vec![ResonanceTerm::new(1.0, 1.0, 0.3)];
        m.chi = vec![ResonanceTerm::new(0.3, 1.0, 0.3)];
        m
    }

    /// Tellegen medium with an anisotropic chi axis. In a homogeneous
    /// biisotropic Tellegen medium the magnetoelectric terms cancel inside
    /// the electric-field Helmholtz operator, so the electric Green tensor
    /// stays Onsager-symmetric; an anisotropic chi leaves a nonzero
    /// commutator with the curl and makes the violation visible.
    pub fn tellegen_anisotropic() -> Self {
        let mut m = Self::new("tellegen-anisotropic");
        m.eps = vec![ResonanceTerm::new(1.2, 1.0, 0.3)];
        m.mu = vec![ResonanceTerm::new(1.0, 1.0, 0.3)];
        m.chi = vec![ResonanceTerm::new(0.3, 1.0, 0.3)];
        m.anisotropy = Some(Anisotropy {
            chi_axis: [1.0, 0.35, 0.1],
            ..Anisotropy::default()
        });
        m
    }

    /// Named fixtures exercised by the verification suites.
    pub fn zoo() -> Vec<(&'static str, Self)> {
        vec![
            ("vacuum", Self::vacuum()),
            ("lorentz-dielectric", Self::lorentz_dielectric()),
            ("lorentz-magnetic", Self::lorentz_magnetic()),
            ("uniaxial-dielectric", Self::uniaxial_dielectric()),
            ("isotropic-chiral", Self::isotropic_chiral()),
            ("tellegen", Self::tellegen()),
            ("tellegen-anisotropic", Self::tellegen_anisotropic()),
        ]
    }
}

/// Draw a fully bianisotropic random model and halve its magnetoelectric
/// amplitudes until the 6x6 noise covariance is PSD on a dense frequency
/// grid. PSD of that covariance makes Re Q(k, w) PSD for every k (they
/// are congruent), so the result is passive as a k-space kernel too. With
/// the couplings driven to zero the lossy Lorentz backbone is strictly
/// passive, so the loop terminates.
pub fn random_passive_model<R: rand::Rng>(rng: &mut R) -> MediumModel {
    let mut term = |lo: f64, hi: f64| {
        ResonanceTerm::new(
            rng.random_range(lo..hi),
            rng.random_range(0.7..1.6),
            rng.random_range(0.15..0.45),
        )
    };
    let mut m = MediumModel::new("random-passive");
    m.eps = vec![term(0.6, 1.4)];
    m.mu = vec![term(0.3, 0.9)];
    m.kappa = vec![term(0.0, 0.2)];
    m.chi = vec![term(0.0, 0.15)];
    let mut axis = |lo: f64, hi: f64| {
        [
            rng.random_range(lo..hi),
            rng.random_range(lo..hi),
            rng.random_range(lo..hi),
        ]
    };
    m.anisotropy = Some(Anisotropy {
        eps_axis: axis(0.7, 1.3),
        mu_axis: axis(0.7, 1.3),
        kappa_axis: axis(0.5, 1.0),
        chi_axis: axis(0.5, 1.0),
        rotation: Some(RotationSpec {
            axis: axis(-1.0, 1.0),
            angle: rng.random_range(0.0..std::f64::consts::PI),
        }),
    });
    if m.anisotropy.as_ref().unwrap().rotation.as_ref().unwrap().axis == [0.0, 0.0, 0.0] {
        m.anisotropy.as_mut().unwrap().rotation = None;
    }

    let kc = crate::constants::PhysicalConstants::scaled();
    let grid: Vec<f64> = (0..80)
        .map(|i| 0.02 * (30.0_f64 / 0.02).powf(i as f64 / 79.0))
        .collect();
    let passive = |m: &MediumModel| -> bool {
        grid.iter().all(|&w| {
            m.evaluate(cre(w))
                .ok()
                .and_then(|rs| crate::fluctuations::noise_pm_covariance(&rs, &kc).ok())
                .and_then(|cov| cov.min_eigenvalue().ok().map(|min| (min, cov.matrix.norm())))
                .map(|(min, norm)| min >= -1e-13 * norm.max(1.0))
                .unwrap_or(false)
        })
    };
    for _ in 0..40 {
        if passive(&m) {
            return m;
        }
        for t in m.kappa.iter_mut().chain(m.chi.iter_mut()) {
            t.amplitude *= 0.5;
        }
    }
    m.kappa.clear();
    m.chi.clear();
    m
}
