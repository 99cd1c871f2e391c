use super::kinetic::{kinetic_inverse, BlockKinetic};
use super::{UnderwaterState, VehicleParams, OFFSET_DIRECTION};
use crate::error::{Error, Result};
use crate::geom::{chart_rotation, ChartVector, Vec3};

/// An admissible vehicle with its kinetic inverse computed once, for use
/// in integration loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vehicle {
    params: VehicleParams,
    kinetic: BlockKinetic,
}

impl Vehicle {
    pub fn new(params: &VehicleParams) -> Result<Self> {
        Ok(Vehicle { params: *params, kinetic: kinetic_inverse(params)? })
    }

    pub fn params(&self) -> &VehicleParams {
        &self.params
    }

    pub fn kinetic(&self) -> &BlockKinetic {
        &self.kinetic
    }

    pub fn velocities(&self, u: &UnderwaterState) -> (Vec3, Vec3) {
        block_velocities(u, &self.kinetic)
    }

    pub fn hamiltonian(&self, u: &UnderwaterState) -> f64 {
        hamiltonian_general(u, &self.kinetic, self.params.mgl(), &OFFSET_DIRECTION)
    }

    pub fn vector_field(&self, u: &UnderwaterState) -> [f64; 9] {
        vector_field_general(u, &self.kinetic, self.params.mgl(), &OFFSET_DIRECTION)
    }
}

fn block_velocities(u: &UnderwaterState, bk: &BlockKinetic) -> (Vec3, Vec3) {
    let omega = bk.a * u.pi + bk.b.transpose() * u.q;
    let v = bk.b * u.pi + bk.c * u.q;
    (omega, v)
}

/// `(Ω, v) = (AΠ + BᵀQ, BΠ + CQ)`.
pub fn velocities(u: &UnderwaterState, v: &VehicleParams) -> Result<(Vec3, Vec3)> {
    Ok(Vehicle::new(v)?.velocities(u))
}

/// `½(⟨Π, AΠ⟩ + 2⟨Π, BᵀQ⟩ + ⟨Q, CQ⟩) − mgl⟨Γ, r⟩` for an arbitrary offset
/// direction `r`.
pub fn hamiltonian_general(u: &UnderwaterState, bk: &BlockKinetic, mgl: f64, r: &Vec3) -> f64 {
    let (omega, v) = block_velocities(u, bk);
    0.5 * (u.pi.dot(&omega) + u.q.dot(&v)) - mgl * u.gamma.dot(r)
}

pub fn hamiltonian(u: &UnderwaterState, v: &VehicleParams) -> Result<f64> {
    Ok(Vehicle::new(v)?.hamiltonian(u))
}

/// `Π̇ = Π×Ω + Q×v − mgl Γ×r`, `Q̇ = Q×Ω`, `Γ̇ = Γ×Ω`.
pub fn vector_field_general(u: &UnderwaterState, bk: &BlockKinetic, mgl: f64, r: &Vec3) -> [f64; 9] {
    let (omega, v) = block_velocities(u, bk);
    UnderwaterState {
        pi: u.pi.cross(&omega) + u.q.cross(&v) - u.gamma.cross(r) * mgl,
        q: u.q.cross(&omega),
        gamma: u.gamma.cross(&omega),
    }
    .to_array()
}

pub fn vector_field(u: &UnderwaterState, v: &VehicleParams) -> Result<[f64; 9]> {
    Ok(Vehicle::new(v)?.vector_field(u))
}

/// `(‖Q‖², ⟨Q, Γ⟩, ‖Γ‖²)`.
pub fn casimirs(u: &UnderwaterState) -> [f64; 3] {
    [u.q.norm_squared(), u.q.dot(&u.gamma), u.gamma.norm_squared()]
}

/// Horizontal translation without spin: `Π = (−(ml/m2) Q2, 0, 0)`,
/// `Q = (0, Q2, 0)`, `Γ = (0, 0, 1)`.
pub fn equilibrium(q2e: f64, v: &VehicleParams) -> Result<UnderwaterState> {
    v.validate()?;
    if q2e == 0.0 || !q2e.is_finite() {
        return Err(Error::DegenerateEquilibrium(format!("Q2e must be finite and nonzero, got {q2e}")));
    }
    Ok(UnderwaterState {
        pi: Vec3::new(-(v.ml() / v.m2) * q2e, 0.0, 0.0),
        q: Vec3::new(0.0, q2e, 0.0),
        gamma: Vec3::z(),
    })
}

/// The leaf point with chart coordinates `(Π, p)`: `(Π, R Q^e, R Γ^e)`.
pub fn chart_state(pi: &Vec3, p: &ChartVector, q2e: f64) -> UnderwaterState {
    let r = chart_rotation(p);
    UnderwaterState { pi: *pi, q: r.column(1) * q2e, gamma: r.column(2).into() }
}
