//! Neutrally buoyant rigid vehicle in an ideal fluid, with added mass.
//!
//! State `u = (Π, Q, Γ)`: angular impulse, linear impulse and the direction
//! of gravity, all in the body frame centred at the centre of buoyancy. The
//! third body axis is a principal axis of the vehicle and the centre of
//! gravity sits a distance `l` below the centre of buoyancy along it.

mod analysis;
mod dynamics;
mod kinetic;

pub use analysis::{
    hessian_determinant, reduced_hamiltonian, reduced_hamiltonian_at, reduced_hessian, stability_analysis,
    stability_conditions, StabilityConditions, UnderwaterStabilityReport,
};
pub use dynamics::{
    casimirs, chart_state, equilibrium, hamiltonian, hamiltonian_general, vector_field, vector_field_general,
    velocities, Vehicle,
};
pub use kinetic::{
    admissibility, kinetic_inverse, mass_matrices, AdmissibilityReport, BlockKinetic, BlockInequalities,
    PhysicalInequalities,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec3;

/// Offset direction from the centre of buoyancy to the centre of gravity.
pub const OFFSET_DIRECTION: Vec3 = Vec3::new(0.0, 0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleParams {
    /// Vehicle mass, kg.
    pub m: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
    /// Buoyancy-to-gravity offset, m.
    pub l: f64,
    /// Diagonal of the mass matrix including added mass, kg.
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    /// Entries of the inertia matrix including added inertia, kg·m².
    pub i11: f64,
    pub i12: f64,
    pub i22: f64,
    pub i3: f64,
}

impl VehicleParams {
    /// Checks the scalar preconditions (`m > 0`, `g > 0`, `l >= 0`, all
    /// finite). The matrix inequalities are reported by [`admissibility`].
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.m, self.g, self.l, self.m1, self.m2, self.m3, self.i11, self.i12, self.i22, self.i3,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::Admissibility("vehicle parameters must be finite".into()));
        }
        if !(self.m > 0.0 && self.g > 0.0 && self.l >= 0.0) {
            return Err(Error::Admissibility(format!(
                "need m > 0, g > 0, l >= 0 (got m = {}, g = {}, l = {})",
                self.m, self.g, self.l
            )));
        }
        Ok(())
    }

    pub(crate) fn ml(&self) -> f64 {
        self.m * self.l
    }

    pub(crate) fn mgl(&self) -> f64 {
        self.m * self.g * self.l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnderwaterState {
    pub pi: Vec3,
    pub q: Vec3,
    pub gamma: Vec3,
}

impl UnderwaterState {
    pub const DIM: usize = 9;

    pub fn to_array(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        out[..3].copy_from_slice(self.pi.as_slice());
        out[3..6].copy_from_slice(self.q.as_slice());
        out[6..].copy_from_slice(self.gamma.as_slice());
        out
    }

    pub fn from_slice(x: &[f64]) -> Self {
        assert_eq!(x.len(), Self::DIM);
        let v = |b: usize| Vec3::new(x[3 * b], x[3 * b + 1], x[3 * b + 2]);
        UnderwaterState { pi: v(0), q: v(1), gamma: v(2) }
    }
}
