//! Rigid spacecraft on a stationary orbit around a uniformly rotating
//! asteroid.
//!
//! State `z = (Π, α, β, γ)`: angular momentum plus the body-frame components
//! of the orbit frame (γ points at the asteroid, β opposes the orbital
//! angular momentum, α = β × γ).

mod analysis;
mod asteroid;
mod dynamics;

pub use analysis::{
    reduced_hamiltonian, reduced_hamiltonian_at, reduced_hessian, stability_analysis, stability_conditions, Regime,
    SpacecraftStabilityReport,
};
pub use asteroid::{
    castalia_preset, gravity_coefficients, harmonic_coefficients, stationary_orbit_quintic,
    stationary_orbit_radii, AsteroidParams, OrbitRadius,
};
pub use dynamics::{casimirs, chart_state, equilibrium, grad_hamiltonian, hamiltonian, poisson_matrix, vector_field};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacecraftParams {
    /// Principal moments (I1, I2, I3), kg·m².
    pub inertia: [f64; 3],
    /// Asteroid spin rate, rad/s.
    pub omega_t: f64,
    /// Gravity-gradient coefficients (k1, k2, k3), s⁻².
    pub k: [f64; 3],
}

impl SpacecraftParams {
    pub fn new(inertia: [f64; 3], omega_t: f64, k: [f64; 3]) -> Result<Self> {
        let p = SpacecraftParams { inertia, omega_t, k };
        p.validate()?;
        Ok(p)
    }

    /// Couples the gravity-gradient coefficients to an asteroid and orbit radius.
    pub fn from_asteroid(inertia: [f64; 3], asteroid: &AsteroidParams, orbit_radius: f64) -> Result<Self> {
        asteroid.validate()?;
        if !(orbit_radius > 0.0 && orbit_radius.is_finite()) {
            return Err(Error::Admissibility(format!("orbit radius must be positive, got {orbit_radius}")));
        }
        Self::new(inertia, asteroid.omega_t, gravity_coefficients(asteroid, orbit_radius))
    }

    pub fn validate(&self) -> Result<()> {
        if self.inertia.iter().any(|i| !(i.is_finite() && *i > 0.0)) {
            return Err(Error::Admissibility(format!("inertia moments must be positive, got {:?}", self.inertia)));
        }
        if !self.omega_t.is_finite() || self.k.iter().any(|k| !k.is_finite()) {
            return Err(Error::Admissibility("omega_t and k must be finite".into()));
        }
        Ok(())
    }

    pub(crate) fn inertia_vec(&self) -> Vec3 {
        Vec3::from(self.inertia)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacecraftState {
    pub pi: Vec3,
    pub alpha: Vec3,
    pub beta: Vec3,
    pub gamma: Vec3,
}

impl SpacecraftState {
    pub const DIM: usize = 12;

    pub fn to_array(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for (b, v) in [self.pi, self.alpha, self.beta, self.gamma].iter().enumerate() {
            out[3 * b..3 * b + 3].copy_from_slice(v.as_slice());
        }
        out
    }

    pub fn from_slice(x: &[f64]) -> Self {
        assert_eq!(x.len(), Self::DIM);
        let v = |b: usize| Vec3::new(x[3 * b], x[3 * b + 1], x[3 * b + 2]);
        SpacecraftState { pi: v(0), alpha: v(1), beta: v(2), gamma: v(3) }
    }
}
