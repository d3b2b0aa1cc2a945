//! Shared setup for the solver benchmarks.

use nalgebra::Vector3;

use mqed_core::conductivity::Nonlocal1DKernel;
use mqed_core::constants::PhysicalConstants;
use mqed_core::media::MediumModel;

pub fn constants() -> PhysicalConstants {
    PhysicalConstants::scaled()
}

/// Fully coupled model so the solvers see every term.
pub fn bianisotropic_model() -> MediumModel {
    MediumModel::tellegen_anisotropic()
}

pub fn drude_kernel(n: usize) -> Nonlocal1DKernel {
    Nonlocal1DKernel::new(n, 10.0, 0.7, 1.0, 0.3, constants()).expect("valid kernel")
}

/// A modest sweep of wave vectors off the light cone.
pub fn k_sweep() -> Vec<Vector3<f64>> {
    (0..16)
        .map(|i| {
            let t = i as f64 / 16.0;
            Vector3::new(0.2 + t, 0.3 * t, 0.15 + 0.5 * t)
        })
        .collect()
}
