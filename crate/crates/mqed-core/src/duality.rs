//! Electromagnetic duality transformations and symmetry classification.
//!
//! Duality acts on dual field pairs such as (E, Z0 H) through the SO(2)
//! rotation D(theta) = [[cos, sin], [-sin, cos]], which commutes with the
//! symplectic matrix of the curl equations; Maxwell's equations are
//! therefore form-invariant. On the stacked responses (eps, xi, zeta, mu)
//! the induced four-slot map is
//!
//! ```text
//!             [  c^2   sc    sc   s^2 ]
//! D4(theta) = [ -sc    c^2  -s^2  sc  ]     c = cos(theta), s = sin(theta),
//!             [ -sc   -s^2   c^2  sc  ]
//!             [  s^2  -sc   -sc   c^2 ]
//! ```
//!
//! equivalently conjugation of the 2x2 constitutive block matrix
//! [[eps, xi], [zeta, mu]] by D(theta). The noise pair transforms with the
//! response-dependent sandwich of the constitutive relation, and in free
//! space the Green blocks (Gee, Gem, Gme, Gmm + I) transform with the
//! same four-slot map.
//!
//! Symmetry classification is structural-class closure: a model has
//! continuous duality symmetry when rotation at generic angles keeps it in
//! its structural class, discrete symmetry when only multiples of pi/2
//! do. Closure deliberately ignores the reciprocity flags: rotating a
//! reciprocal biisotropic medium at a generic angle produces Tellegen-type
//! non-reciprocal couplings while staying biisotropic, which is precisely
//! why the continuous group needs Onsager-violating media.

use nalgebra::{Matrix2, Matrix4, Vector3};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::green::GreenBlocks;
use crate::media::{classify, MediumModel, ResponseSet};
use crate::tensors::{cre, CTensor3, C64};

/// Complex 3-vector for c-number field samples.
pub type CVector3 = Vector3<C64>;

/// 2x2 field rotation D(theta).
pub fn rotation2(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// The four-slot coefficient matrix D4(theta) acting on the stacked
/// (eps, xi, zeta, mu).
pub fn duality_coefficients(theta: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    let (c2, s2, sc) = (c * c, s * s, s * c);
    Matrix4::new(
        c2, sc, sc, s2, //
        -sc, c2, -s2, sc, //
        -sc, -s2, c2, sc, //
        s2, -sc, -sc, c2,
    )
}

/// A dual pair of c-number field samples, e.g. (E, Z0 H) or (Z0 D, B).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    pub top: CVector3,
    pub bottom: CVector3,
}

impl FieldPair {
    pub fn new(top: CVector3, bottom: CVector3) -> Self {
        Self { top, bottom }
    }
}

/// Apply D(theta) to a stacked dual pair.
pub fn rotate_fields(fp: &FieldPair, theta: f64) -> FieldPair {
    let (s, c) = theta.sin_cos();
    FieldPair {
        top: fp.top * cre(c) + fp.bottom * cre(s),
        bottom: fp.top * cre(-s) + fp.bottom * cre(c),
    }
}

/// Transformed responses D4(theta) (eps, xi, zeta, mu).
pub fn rotate_responses(rs: &ResponseSet, theta: f64) -> ResponseSet {
    let d = duality_coefficients(theta);
    let slots = [rs.eps, rs.xi, rs.zeta, rs.mu];
    let mut out = [CTensor3::zeros(); 4];
    for (r, slot) in out.iter_mut().enumerate() {
        for (c, t) in slots.iter().enumerate() {
            *slot += t * cre(d[(r, c)]);
        }
    }
    ResponseSet::new(out[0], out[1], out[2], out[3], rs.omega)
}

/// The duality map as a value: angle plus its four-slot coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityMap {
    pub theta: f64,
    coefficients: Matrix4<f64>,
}

impl DualityMap {
    pub fn new(theta: f64) -> Self {
        Self {
            theta,
            coefficients: duality_coefficients(theta),
        }
    }

    pub fn coefficients(&self) -> &Matrix4<f64> {
        &self.coefficients
    }

    pub fn apply(&self, rs: &ResponseSet) -> ResponseSet {
        rotate_responses(rs, self.theta)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.theta)
    }
}

/// Constitutive sandwich S(rs) n for the noise pair n = (Z0 P_N, mu0 M_N):
/// S = [[I, xi], [0, mu]].
fn noise_sandwich(rs: &ResponseSet, noise: &FieldPair) -> FieldPair {
    FieldPair {
        top: noise.top + rs.xi * noise.bottom,
        bottom: rs.mu * noise.bottom,
    }
}

/// Transform the noise pair: n* = S(rs*)^-1 D(theta) S(rs) n, where rs*
/// is the rotated response set. Errors when the rotated permeability is
/// singular at this angle.
pub fn rotate_noise(rs: &ResponseSet, noise: &FieldPair, theta: f64) -> Result<FieldPair> {
    let rotated = rotate_responses(rs, theta);
    // a rotated permeability collapsing to ~0 is well conditioned but
    // physically degenerate; compare against the response scale
    if rotated.mu.norm() <= 1e-12 * rs.norm_scale().max(1.0) {
        return Err(Error::DualitySingular { theta });
    }
    let mu_star_inv = rotated
        .mu_inv()
        .map_err(|_| Error::DualitySingular { theta })?;
    let forward = rotate_fields(&noise_sandwich(rs, noise), theta);
    // solve [[I, xi*], [0, mu*]] n* = forward
    let bottom = mu_star_inv * forward.bottom;
    let top = forward.top - rotated.xi * bottom;
    Ok(FieldPair { top, bottom })
}

/// Flux pair (Z0 D, B) of the constitutive relation:
/// (1/c) Cm (E, Z0 H) + S (Z0 P_N, mu0 M_N). The joint rotation of
/// fields, responses and noise leaves this relation form-invariant.
pub fn constitutive_flux(
    rs: &ResponseSet,
    fields: &FieldPair,
    noise: &FieldPair,
    kc: &PhysicalConstants,
) -> FieldPair {
    let inv_c = cre(1.0 / kc.c);
    let driven = noise_sandwich(rs, noise);
    FieldPair {
        top: (rs.eps * fields.top + rs.xi * fields.bottom) * inv_c + driven.top,
        bottom: (rs.zeta * fields.top + rs.mu * fields.bottom) * inv_c + driven.bottom,
    }
}

/// Free-space Green-block transformation: D4(theta) acts on the stacked
/// (Gee, Gem, Gme, Gmm + I); the identity is subtracted back afterwards.
/// Valid only for blocks computed with both points in free space.
pub fn rotate_green_blocks_vacuum(blocks: &GreenBlocks, theta: f64) -> GreenBlocks {
    let d = duality_coefficients(theta);
    let slots = [
        blocks.gee,
        blocks.gem,
        blocks.gme,
        blocks.gmm + CTensor3::identity(),
    ];
    let mut out = [CTensor3::zeros(); 4];
    for (r, slot) in out.iter_mut().enumerate() {
        for (c, t) in slots.iter().enumerate() {
            *slot += t * cre(d[(r, c)]);
        }
    }
    GreenBlocks {
        gee: out[0],
        gem: out[1],
        gme: out[2],
        gmm: out[3] - CTensor3::identity(),
        k: blocks.k,
        omega: blocks.omega,
    }
}

/// Continuous versus discrete duality symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryKind {
    Continuous,
    Discrete,
}

/// Classification outcome with a witness angle where closure fails.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SymmetryClass {
    pub kind: SymmetryKind,
    /// Angle at which structural closure breaks (discrete media only).
    pub witness_theta: Option<f64>,
}

/// Generic probe angles: one rational, one irrational multiple of pi, so
/// accidental closure at special angles is not mistaken for symmetry.
pub const CONTINUOUS_PROBES: [f64; 2] = [std::f64::consts::FRAC_PI_4, std::f64::consts::PI / 7.0];

/// Classify a model by structural-class closure under duality rotation at
/// every sampled frequency. Closure at the generic probe angles means
/// continuous symmetry; otherwise closure must hold at multiples of pi/2
/// (it always does, since D4(pi/2) permutes the slots) and the symmetry
/// is discrete with the failing angle as witness.
pub fn symmetry_class(
    model: &MediumModel,
    omega_samples: &[C64],
    tol: f64,
) -> Result<SymmetryClass> {
    if omega_samples.is_empty() {
        return Err(Error::InvalidInput("no frequency samples given".into()));
    }
    let mut witness = None;
    'probes: for &theta in &CONTINUOUS_PROBES {
        for &w in omega_samples {
            let rs = model.evaluate(w)?;
            let base = classify(&rs, tol).kind;
            let rotated = classify(&rotate_responses(&rs, theta), tol).kind;
            if rotated != base {
                witness = Some(theta);
                break 'probes;
            }
        }
    }
    let Some(witness_theta) = witness else {
        return Ok(SymmetryClass {
            kind: SymmetryKind::Continuous,
            witness_theta: None,
        });
    };
    // discrete closure at n pi/2 must survive
    for n in 1..=3 {
        let theta = n as f64 * std::f64::consts::FRAC_PI_2;
        for &w in omega_samples {
            let rs = model.evaluate(w)?;
            let base = classify(&rs, tol).kind;
            let rotated = classify(&rotate_responses(&rs, theta), tol).kind;
            if rotated != base {
                return Err(Error::Classification(format!(
                    "structural closure fails even at theta = {n} pi/2 for '{}' at omega = {w} \
                     ({base} -> {rotated}); the slot permutation should preserve every class",
                    model.name
                )));
            }
        }
    }
    Ok(SymmetryClass {
        kind: SymmetryKind::Discrete,
        witness_theta: Some(witness_theta),
    })
}

/// Does the reciprocity predicate survive rotation by theta? Used by the
/// duality verification suite.
pub fn reciprocity_preserved(rs: &ResponseSet, theta: f64, tol: f64) -> bool {
    let before = classify(rs, tol).reciprocal;
    let after = classify(&rotate_responses(rs, theta), tol).reciprocal;
    before == after
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{solve_green_k, GreenBlocks};
    use crate::media::{MediumClassKind, MediumModel};
    use crate::tensors::{c64, rel_diff, scalar3};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    use crate::testutil::{random_k, random_response_set};

    fn kc() -> PhysicalConstants {
        PhysicalConstants::scaled()
    }

    fn random_cvec(rng: &mut ChaCha8Rng) -> CVector3 {
        CVector3::new(
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        )
    }

    fn pair_diff(a: &FieldPair, b: &FieldPair) -> f64 {
        ((a.top - b.top).norm_squared() + (a.bottom - b.bottom).norm_squared()).sqrt()
    }

    #[test]
    fn field_rotation_at_zero_and_quarter_turn() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let fp = FieldPair::new(random_cvec(&mut rng), random_cvec(&mut rng));
        let same = rotate_fields(&fp, 0.0);
        assert!(pair_diff(&same, &fp) < 1e-15);

        // quarter turn: (E, Z0 H) -> (Z0 H, -E)
        let quarter = rotate_fields(&fp, std::f64::consts::FRAC_PI_2);
        assert!((quarter.top - fp.bottom).norm() < 1e-15);
        assert!((quarter.bottom + fp.top).norm() < 1e-15);
    }

    #[test]
    fn field_rotation_commutes_with_symplectic_matrix() {
        let j = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        for theta in [0.3, 1.0, 2.5, -0.7, 4.0] {
            let d = rotation2(theta);
            assert!((d * j - j * d).norm() < 1e-15, "theta = {theta}");
        }
    }

    #[test]
    fn quarter_turn_permutes_response_slots_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let rs = random_response_set(&mut rng, cre(1.0));
        let r = rotate_responses(&rs, std::f64::consts::FRAC_PI_2);
        let scale = rs.norm_scale();
        assert!((r.eps - rs.mu).norm() <= 1e-14 * scale);
        assert!((r.xi + rs.zeta).norm() <= 1e-14 * scale);
        assert!((r.zeta + rs.xi).norm() <= 1e-14 * scale);
        assert!((r.mu - rs.eps).norm() <= 1e-14 * scale);
    }

    #[test]
    fn vacuum_is_a_fixed_point_for_any_angle() {
        let vac = ResponseSet::vacuum(cre(0.9));
        for theta in [0.1, 1.234, std::f64::consts::FRAC_PI_4, 2.9] {
            let r = rotate_responses(&vac, theta);
            assert!((r.eps - CTensor3::identity()).norm() < 1e-13);
            assert!(r.xi.norm() < 1e-13);
            assert!(r.zeta.norm() < 1e-13);
            assert!((r.mu - CTensor3::identity()).norm() < 1e-13);
        }
    }

    #[test]
    fn generic_rotation_breaks_isotropy_when_eps_differs_from_mu() {
        let rs = ResponseSet::new(
            scalar3(cre(2.0)),
            CTensor3::zeros(),
            CTensor3::zeros(),
            CTensor3::identity(),
            cre(1.0),
        );
        let r = rotate_responses(&rs, std::f64::consts::FRAC_PI_4);
        let expect = scalar3(cre(-0.5)); // -(1/2)(eps - mu)
        assert!(rel_diff(&r.xi, &expect) < 1e-14);
        assert!(rel_diff(&r.zeta, &expect) < 1e-14);
    }

    #[test]
    fn four_slot_map_matches_block_conjugation() {
        // Independent route: conjugate the 2x2-of-blocks constitutive
        // matrix by D(theta) and compare slot by slot.
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let rs = random_response_set(&mut rng, cre(1.0));
            let theta = rng.random_range(-3.5..3.5);
            let r = rotate_responses(&rs, theta);

            let (s, c) = theta.sin_cos();
            let (cc, ss) = (cre(c), cre(s));
            // rows of D Cm, with Cm = [[eps, xi], [zeta, mu]]
            let dcm_tl = rs.eps * cc + rs.zeta * ss;
            let dcm_tr = rs.xi * cc + rs.mu * ss;
            let dcm_bl = rs.eps * (-ss) + rs.zeta * cc;
            let dcm_br = rs.xi * (-ss) + rs.mu * cc;
            // columns of (D Cm) D^T
            let eps_c = dcm_tl * cc + dcm_tr * ss;
            let xi_c = dcm_tl * (-ss) + dcm_tr * cc;
            let zeta_c = dcm_bl * cc + dcm_br * ss;
            let mu_c = dcm_bl * (-ss) + dcm_br * cc;

            assert!(rel_diff(&r.eps, &eps_c) < 1e-13);
            assert!(rel_diff(&r.xi, &xi_c) < 1e-13);
            assert!(rel_diff(&r.zeta, &zeta_c) < 1e-13);
            assert!(rel_diff(&r.mu, &mu_c) < 1e-13);
        }
    }

    #[test]
    fn group_laws_on_coefficient_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        assert!((duality_coefficients(0.0) - Matrix4::identity()).norm() < 1e-15);
        for _ in 0..100 {
            let t1 = rng.random_range(-4.0..4.0);
            let t2 = rng.random_range(-4.0..4.0);
            let composed = duality_coefficients(t1) * duality_coefficients(t2);
            let direct = duality_coefficients(t1 + t2);
            assert!(
                (composed - direct).norm() <= 1e-13,
                "group law at ({t1}, {t2})"
            );
            let inv = duality_coefficients(t1) * duality_coefficients(-t1);
            assert!((inv - Matrix4::identity()).norm() <= 1e-13);
        }
    }

    #[test]
    fn reciprocity_preserved_at_half_turns_broken_at_quarter() {
        let w = cre(0.8);
        let rs = MediumModel::lorentz_dielectric().evaluate(w).unwrap();
        for n in 1..=4 {
            let theta = n as f64 * std::f64::consts::FRAC_PI_2;
            assert!(
                reciprocity_preserved(&rs, theta, crate::media::CLASSIFY_TOL),
                "n = {n}"
            );
        }
        // eps != mu: rotating by pi/4 produces a Tellegen-type coupling
        let rotated = rotate_responses(&rs, std::f64::consts::FRAC_PI_4);
        assert!(!classify(&rotated, crate::media::CLASSIFY_TOL).reciprocal);
        let (_, chi) = crate::media::decompose_magnetoelectric(&rotated);
        assert!(chi.norm() > 0.1);
    }

    #[test]
    fn biisotropy_is_preserved_for_every_angle() {
        let w = cre(0.9);
        let rs = MediumModel::isotropic_chiral().evaluate(w).unwrap();
        for theta in [0.2, 0.7, 1.234, 2.8, std::f64::consts::PI / 7.0] {
            let c = classify(&rotate_responses(&rs, theta), crate::media::CLASSIFY_TOL);
            assert_eq!(c.kind, MediumClassKind::Biisotropic, "theta = {theta}");
        }
    }

    #[test]
    fn noise_rotation_identity_and_vacuum_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let noise = FieldPair::new(random_cvec(&mut rng), random_cvec(&mut rng));
        let rs = random_response_set(&mut rng, cre(1.0));
        let same = rotate_noise(&rs, &noise, 0.0).unwrap();
        assert!(pair_diff(&same, &noise) < 1e-13);

        // in vacuum the sandwiching matrices are the identity
        let vac = ResponseSet::vacuum(cre(1.0));
        for theta in [0.4, 1.9, -0.8] {
            let rotated = rotate_noise(&vac, &noise, theta).unwrap();
            let direct = rotate_fields(&noise, theta);
            assert!(pair_diff(&rotated, &direct) < 1e-13, "theta = {theta}");
        }
    }

    #[test]
    fn constitutive_relation_is_duality_covariant() {
        // The joint consistency oracle: rotating fields, responses and
        // noise together maps the constitutive relation onto itself.
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let angles = [
            std::f64::consts::PI / 7.0,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_2,
            2.5,
        ];
        for _ in 0..100 {
            let rs = random_response_set(&mut rng, cre(1.0));
            let fields = FieldPair::new(random_cvec(&mut rng), random_cvec(&mut rng));
            let noise = FieldPair::new(random_cvec(&mut rng), random_cvec(&mut rng));
            let flux = constitutive_flux(&rs, &fields, &noise, &kc());
            for &theta in &angles {
                let fields_r = rotate_fields(&fields, theta);
                let rs_r = rotate_responses(&rs, theta);
                let noise_r = rotate_noise(&rs, &noise, theta).unwrap();
                let flux_r = constitutive_flux(&rs_r, &fields_r, &noise_r, &kc());
                let expect = rotate_fields(&flux, theta);
                let scale = (flux.top.norm() + flux.bottom.norm()).max(1.0);
                assert!(
                    pair_diff(&flux_r, &expect) <= 1e-12 * scale,
                    "covariance residual {:.3e} at theta = {theta}",
                    pair_diff(&flux_r, &expect)
                );
            }
        }
    }

    #[test]
    fn degenerate_rotated_permeability_is_reported() {
        // eps = -mu makes mu* vanish at theta = pi/4
        let rs = ResponseSet::new(
            scalar3(cre(-1.5)),
            CTensor3::zeros(),
            CTensor3::zeros(),
            scalar3(cre(1.5)),
            cre(1.0),
        );
        let noise = FieldPair::new(CVector3::zeros(), CVector3::zeros());
        match rotate_noise(&rs, &noise, std::f64::consts::FRAC_PI_4) {
            Err(Error::DualitySingular { .. }) => {}
            other => panic!("expected duality singularity, got {other:?}"),
        }
    }

    #[test]
    fn vacuum_green_blocks_are_a_duality_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..25 {
            let w = cre(rng.random_range(0.2..1.8));
            let k = random_k(&mut rng, 1.4);
            if (k.norm() - w.re).abs() < 0.05 {
                continue;
            }
            let g = match solve_green_k(&ResponseSet::vacuum(w), &k, w, &kc()) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let blocks = GreenBlocks::from_green(&g, &kc());
            for theta in [0.0, 0.9, std::f64::consts::FRAC_PI_2, 2.2] {
                let rotated = rotate_green_blocks_vacuum(&blocks, theta);
                for (a, b) in rotated.slots().into_iter().zip(blocks.slots()) {
                    assert!(
                        (a - b).norm() <= 1e-12 * b.norm().max(1.0),
                        "vacuum blocks move at theta = {theta}"
                    );
                }
            }
        }
    }

    #[test]
    fn quarter_turn_swaps_green_block_slots() {
        let w = cre(0.5);
        let k = Vector3::new(1.0, 0.0, 0.0);
        let g = solve_green_k(&ResponseSet::vacuum(w), &k, w, &kc()).unwrap();
        let b = GreenBlocks::from_green(&g, &kc());
        let r = rotate_green_blocks_vacuum(&b, std::f64::consts::FRAC_PI_2);
        // slots map like the responses: (Gee, Gem, Gme, Gmm+I) ->
        // (Gmm+I, -Gme, -Gem, Gee), with I subtracted back from slot 4
        let gmm_plus_i = b.gmm + CTensor3::identity();
        assert!((r.gee - gmm_plus_i).norm() < 1e-13);
        assert!((r.gem + b.gme).norm() < 1e-13);
        assert!((r.gme + b.gem).norm() < 1e-13);
        assert!((r.gmm + CTensor3::identity() - b.gee).norm() < 1e-13);
    }

    #[test]
    fn symmetry_classification_of_the_zoo() {
        let samples = [cre(0.5), cre(0.9), cre(1.7)];
        let tol = crate::media::CLASSIFY_TOL;
        let expect = [
            ("vacuum", SymmetryKind::Continuous),
            ("lorentz-dielectric", SymmetryKind::Discrete),
            ("lorentz-magnetic", SymmetryKind::Discrete),
            ("uniaxial-dielectric", SymmetryKind::Discrete),
            ("isotropic-chiral", SymmetryKind::Continuous),
            ("tellegen", SymmetryKind::Continuous),
            ("tellegen-anisotropic", SymmetryKind::Continuous),
        ];
        for ((name, model), (ename, ekind)) in MediumModel::zoo().iter().zip(expect) {
            assert_eq!(*name, ename);
            let sc = symmetry_class(model, &samples, tol).unwrap();
            assert_eq!(sc.kind, ekind, "{name}");
            if ekind == SymmetryKind::Discrete {
                assert_relative_eq!(
                    sc.witness_theta.unwrap(),
                    std::f64::consts::FRAC_PI_4,
                    epsilon = 1e-15
                );
            } else {
                assert!(sc.witness_theta.is_none());
            }
        }
    }

    proptest! {
        #[test]
        fn rotation_round_trip(theta in -6.0f64..6.0, seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fp = FieldPair::new(random_cvec(&mut rng), random_cvec(&mut rng));
            let back = rotate_fields(&rotate_fields(&fp, theta), -theta);
            prop_assert!(pair_diff(&back, &fp) < 1e-14);

            let rs = random_response_set(&mut rng, cre(1.0));
            let rs_back = rotate_responses(&rotate_responses(&rs, theta), -theta);
            prop_assert!(rel_diff(&rs_back.eps, &rs.eps) < 1e-13);
            prop_assert!(rel_diff(&rs_back.mu, &rs.mu) < 1e-13);
        }

        #[test]
        fn two_pi_periodicity(theta in -3.0f64..3.0) {
            let d1 = duality_coefficients(theta);
            let d2 = duality_coefficients(theta + 2.0 * std::f64::consts::PI);
            prop_assert!((d1 - d2).norm() < 1e-13);
        }
    }
}
