//! Helpers shared by the unit tests of several modules.

use nalgebra::Vector3;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::media::ResponseSet;
use crate::tensors::{c64, scalar3, CTensor3, C64};

/// Random bianisotropic response set with an invertible, diagonally
/// dominant permeability. Not necessarily passive; suited to algebraic
/// identities that hold for arbitrary responses.
pub(crate) fn random_response_set(rng: &mut ChaCha8Rng, omega: C64) -> ResponseSet {
    let rand_t = |rng: &mut ChaCha8Rng, scale: f64| {
        CTensor3::from_fn(|_, _| {
            c64(
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
            )
        })
    };
    let eps = scalar3(c64(2.0, 0.5)) + rand_t(rng, 0.5);
    let mu = scalar3(c64(1.5, 0.3)) + rand_t(rng, 0.3);
    let xi = rand_t(rng, 0.4);
    let zeta = rand_t(rng, 0.4);
    ResponseSet::new(eps, xi, zeta, mu, omega)
}

pub(crate) fn random_k(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
    Vector3::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}
