use nalgebra::SMatrix;

use super::{SpacecraftParams, SpacecraftState};
use crate::geom::{chart_rotation, hat, ChartVector, Vec3};

/// `½⟨Π, 𝕀⁻¹Π⟩ + ω_T⟨Π, β⟩ + k1⟨α, 𝕀α⟩ + k2⟨β, 𝕀β⟩ + k3⟨γ, 𝕀γ⟩`.
pub fn hamiltonian(z: &SpacecraftState, p: &SpacecraftParams) -> f64 {
    let inertia = p.inertia_vec();
    let kinetic = 0.5 * z.pi.component_div(&inertia).dot(&z.pi);
    let coupling = p.omega_t * z.pi.dot(&z.beta);
    let quad = |v: &Vec3| v.component_mul(&inertia).dot(v);
    kinetic + coupling + p.k[0] * quad(&z.alpha) + p.k[1] * quad(&z.beta) + p.k[2] * quad(&z.gamma)
}

fn grad_blocks(z: &SpacecraftState, p: &SpacecraftParams) -> [Vec3; 4] {
    let inertia = p.inertia_vec();
    [
        z.pi.component_div(&inertia) + z.beta * p.omega_t,
        z.alpha.component_mul(&inertia) * (2.0 * p.k[0]),
        z.pi * p.omega_t + z.beta.component_mul(&inertia) * (2.0 * p.k[1]),
        z.gamma.component_mul(&inertia) * (2.0 * p.k[2]),
    ]
}

pub fn grad_hamiltonian(z: &SpacecraftState, p: &SpacecraftParams) -> [f64; 12] {
    let g = grad_blocks(z, p);
    SpacecraftState { pi: g[0], alpha: g[1], beta: g[2], gamma: g[3] }.to_array()
}

/// The 12×12 Poisson tensor: first block row `(Π̂, α̂, β̂, γ̂)`, then
/// `α̂`, `β̂`, `γ̂` in the first block column.
pub fn poisson_matrix(z: &SpacecraftState) -> SMatrix<f64, 12, 12> {
    let mut m = SMatrix::<f64, 12, 12>::zeros();
    for (b, v) in [z.pi, z.alpha, z.beta, z.gamma].iter().enumerate() {
        let h = hat(v);
        m.fixed_view_mut::<3, 3>(0, 3 * b).copy_from(&h);
        if b > 0 {
            m.fixed_view_mut::<3, 3>(3 * b, 0).copy_from(&h);
        }
    }
    m
}

/// `Λ(z)∇H(z)`, assembled with cross products.
pub fn vector_field(z: &SpacecraftState, p: &SpacecraftParams) -> [f64; 12] {
    let [dpi, dalpha, dbeta, dgamma] = grad_blocks(z, p);
    SpacecraftState {
        pi: z.pi.cross(&dpi) + z.alpha.cross(&dalpha) + z.beta.cross(&dbeta) + z.gamma.cross(&dgamma),
        alpha: z.alpha.cross(&dpi),
        beta: z.beta.cross(&dpi),
        gamma: z.gamma.cross(&dpi),
    }
    .to_array()
}

/// `(C11, C12, C13, C22, C23, C33)`, the pairwise inner products of the frame.
pub fn casimirs(z: &SpacecraftState) -> [f64; 6] {
    let (a, b, c) = (&z.alpha, &z.beta, &z.gamma);
    [a.dot(a), a.dot(b), a.dot(c), b.dot(b), b.dot(c), c.dot(c)]
}

/// `Π = -ω_T I2 j`, `(α, β, γ) = (i, j, k)`.
pub fn equilibrium(p: &SpacecraftParams) -> SpacecraftState {
    SpacecraftState {
        pi: Vec3::new(0.0, -p.omega_t * p.inertia[1], 0.0),
        alpha: Vec3::x(),
        beta: Vec3::y(),
        gamma: Vec3::z(),
    }
}

/// The leaf point with chart coordinates `(Π, p)` around the equilibrium
/// frame `(i, j, k)`.
pub fn chart_state(pi: &Vec3, p: &ChartVector) -> SpacecraftState {
    let r = chart_rotation(p);
    SpacecraftState { pi: *pi, alpha: r.column(0).into(), beta: r.column(1).into(), gamma: r.column(2).into() }
}
