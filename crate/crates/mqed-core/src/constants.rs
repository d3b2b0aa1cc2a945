//! Physical constants and unit systems.
//!
//! The default unit system is scaled: c = eps0 = mu0 = hbar = 1, hence
//! Z0 = 1. SI values are available for output in laboratory units. All
//! derived relations (mu0 = 1/(eps0 c^2), Z0 = sqrt(mu0/eps0)) hold to
//! relative 1e-14 in either system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light, vacuum permittivity/permeability, impedance and hbar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light.
    pub c: f64,
    /// Vacuum permittivity.
    pub eps0: f64,
    /// Vacuum permeability, mu0 = 1/(eps0 c^2).
    pub mu0: f64,
    /// Vacuum impedance, Z0 = sqrt(mu0/eps0).
    pub z0: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
}

impl PhysicalConstants {
    /// Scaled units: c = eps0 = mu0 = hbar = Z0 = 1.
    pub fn scaled() -> Self {
        Self {
            c: 1.0,
            eps0: 1.0,
            mu0: 1.0,
            z0: 1.0,
            hbar: 1.0,
        }
    }

    /// SI (2019 redefinition values; eps0 from CODATA 2018).
    pub fn si() -> Self {
        let c = 299_792_458.0;
        let eps0 = 8.8541878128e-12;
        Self::from_base(c, eps0, 1.054571817e-34)
    }

    /// Build from the independent constants, deriving mu0 and Z0.
    pub fn from_base(c: f64, eps0: f64, hbar: f64) -> Self {
        let mu0 = 1.0 / (eps0 * c * c);
        let z0 = (mu0 / eps0).sqrt();
        Self {
            c,
            eps0,
            mu0,
            z0,
            hbar,
        }
    }

    /// Check positivity and the derived relations to relative 1e-14.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c", self.c),
            ("eps0", self.eps0),
            ("mu0", self.mu0),
            ("Z0", self.z0),
            ("hbar", self.hbar),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "constant {name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        let mu0_derived = 1.0 / (self.eps0 * self.c * self.c);
        let z0_derived = (self.mu0 / self.eps0).sqrt();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        if rel(self.mu0, mu0_derived) > 1e-14 {
            return Err(Error::InvalidInput(format!(
                "mu0 = {} inconsistent with 1/(eps0 c^2) = {}",
                self.mu0, mu0_derived
            )));
        }
        if rel(self.z0, z0_derived) > 1e-14 {
            return Err(Error::InvalidInput(format!(
                "Z0 = {} inconsistent with sqrt(mu0/eps0) = {}",
                self.z0, z0_derived
            )));
        }
        Ok(())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::scaled()
    }
}

/// Named unit system selector, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Scaled,
    Si,
}

impl UnitSystem {
    pub fn constants(self) -> PhysicalConstants {
        match self {
            UnitSystem::Scaled => PhysicalConstants::scaled(),
            UnitSystem::Si => PhysicalConstants::si(),
        }
    }
}
