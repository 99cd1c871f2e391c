//! Second-degree gravity model of the asteroid and its stationary orbits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{bracketed_roots, DEFAULT_SCAN_CELLS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsteroidParams {
    /// kg
    pub mass: f64,
    /// m
    pub mean_radius: f64,
    /// rad/s
    pub omega_t: f64,
    pub c20: f64,
    pub c22: f64,
    /// m³·kg⁻¹·s⁻²
    pub g: f64,
}

impl AsteroidParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [("mass", self.mass), ("mean_radius", self.mean_radius), ("omega_t", self.omega_t), ("g", self.g)];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Admissibility(format!("asteroid {name} must be positive, got {v}")));
            }
        }
        if !self.c20.is_finite() || !self.c22.is_finite() {
            return Err(Error::Admissibility("harmonic coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn gm(&self) -> f64 {
        self.g * self.mass
    }

    /// `(GM/ω_T²)^(1/3)`, the stationary radius of a point-mass asteroid.
    pub fn synchronous_radius(&self) -> f64 {
        (self.gm() / (self.omega_t * self.omega_t)).cbrt()
    }
}

/// 4769 Castalia.
pub fn castalia_preset() -> AsteroidParams {
    AsteroidParams { mass: 1.4091e12, mean_radius: 543.1, omega_t: 4.2882e-4, c20: -7.257e-2, c22: 2.984e-2, g: 6.67384e-11 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitRadius {
    /// m
    pub radius: f64,
    /// `radius >= mean_radius`; an orbit inside the body is not realisable.
    pub feasible: bool,
}

/// The stationary-radius quintic multiplied through by `ω_T²`:
/// `ω_T² R⁵ − GM (R² − 3/2 a_e² C20 − 9 a_e² C22)`.
///
/// Same roots as `R⁵ − (GM/ω_T²)(R² − …)`, but with values in units of
/// `GM·m²`, which keeps the root residual meaningful in double precision.
pub fn stationary_orbit_quintic(a: &AsteroidParams, r: f64) -> f64 {
    let ae2 = a.mean_radius * a.mean_radius;
    a.omega_t * a.omega_t * r.powi(5) - a.gm() * (r * r - 1.5 * ae2 * a.c20 - 9.0 * ae2 * a.c22)
}

/// Positive roots of the quintic on `(0, 10 (GM/ω_T²)^(1/3))`, ascending,
/// each flagged with its feasibility.
pub fn stationary_orbit_radii(a: &AsteroidParams) -> Result<Vec<OrbitRadius>> {
    a.validate()?;
    let hi = 10.0 * a.synchronous_radius();
    let roots = bracketed_roots(|r| stationary_orbit_quintic(a, r), 0.0, hi, DEFAULT_SCAN_CELLS);
    Ok(roots
        .into_iter()
        .filter(|&r| r > 0.0)
        .map(|radius| OrbitRadius { radius, feasible: radius >= a.mean_radius })
        .collect())
}

/// `(k1, k2, k3)` for a stationary orbit of radius `r_s`.
pub fn gravity_coefficients(a: &AsteroidParams, r_s: f64) -> [f64; 3] {
    let gm = a.gm();
    let ae2 = a.mean_radius * a.mean_radius;
    let r3 = r_s.powi(3);
    let r5 = r_s.powi(5);
    let k1 = 3.0 * gm * ae2 * a.c22 / r5;
    let k2 = 3.0 * gm * ae2 * a.c20 / (2.0 * r5);
    let k3 = 3.0 * gm / (2.0 * r3) - 3.0 * gm * ae2 / (4.0 * r5) * (5.0 * a.c20 + 34.0 * a.c22);
    [k1, k2, k3]
}

/// `(C20, C22)` from the principal moments `(I_u, I_v, I_w)` of the asteroid.
pub fn harmonic_coefficients(iu: f64, iv: f64, iw: f64, mass: f64, mean_radius: f64) -> (f64, f64) {
    let norm = mass * mean_radius * mean_radius;
    (-(2.0 * iw - iu - iv) / (2.0 * norm), (iv - iu) / (4.0 * norm))
}
