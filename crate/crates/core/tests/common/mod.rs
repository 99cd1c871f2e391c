//! Seeded parameter samplers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use leafstab::numerics::{classify_definiteness, DefinitenessClass};
use leafstab::spacecraft::{reduced_hessian, SpacecraftParams};
use leafstab::underwater::{kinetic_inverse, VehicleParams};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// `I` log-uniform in [0.1, 10], `ω_T` in [0, 1e-2], `k` in [−1e-6, 1e-6].
/// Draws whose Hessian classifies as Marginal are resampled.
pub fn spacecraft_params(rng: &mut StdRng) -> SpacecraftParams {
    loop {
        let inertia = [(); 3].map(|_| log_uniform(rng, 0.1, 10.0));
        let omega_t = rng.random_range(0.0..=1e-2);
        let k = [(); 3].map(|_| rng.random_range(-1e-6..=1e-6));
        let params = SpacecraftParams { inertia, omega_t, k };
        let class = classify_definiteness(&reduced_hessian(&params)).unwrap().class;
        if class != DefinitenessClass::Marginal {
            return params;
        }
    }
}

/// Masses and inertias log-uniform in [0.5, 5], `|I12| < 0.9 sqrt(I11 I22)`,
/// `m²l² < 0.5 min(m1 I22, m2 I11)`; draws with `k <= 0` are rejected.
pub fn vehicle_params(rng: &mut StdRng) -> VehicleParams {
    loop {
        let [m1, m2, m3] = [(); 3].map(|_| log_uniform(rng, 0.5, 5.0));
        let [i11, i22, i3] = [(); 3].map(|_| log_uniform(rng, 0.5, 5.0));
        let bound = 0.9 * (i11 * i22).sqrt();
        let i12 = rng.random_range(-bound..bound);
        let m = log_uniform(rng, 0.5, 5.0);
        let ml_max = (0.5 * (m1 * i22).min(m2 * i11)).sqrt();
        let ml = rng.random_range(0.01..1.0) * ml_max;
        let v = VehicleParams { m, g: 9.81, l: ml / m, m1, m2, m3, i11, i12, i22, i3 };
        if kinetic_inverse(&v).is_ok() {
            return v;
        }
    }
}

/// `|Q2e|` uniform in [0.2, 3] with a random sign.
pub fn impulse(rng: &mut StdRng) -> f64 {
    let q = rng.random_range(0.2..=3.0);
    if rng.random_bool(0.5) {
        q
    } else {
        -q
    }
}

/// A uniformly random point of the ball of the given radius.
pub fn ball_point(rng: &mut StdRng, radius: f64) -> [f64; 3] {
    loop {
        let p = [(); 3].map(|_| rng.random_range(-1.0..1.0));
        if p.iter().map(|c| c * c).sum::<f64>() <= 1.0 {
            return p.map(|c| c * radius);
        }
    }
}

/// A uniformly random unit quaternion.
pub fn unit_quaternion(rng: &mut StdRng) -> [f64; 4] {
    loop {
        let q = [(); 4].map(|_| rng.random_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|c| c * c).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return q.map(|c| c / n);
        }
    }
}

/// V⋆: the reference vehicle.
pub fn reference_vehicle() -> VehicleParams {
    VehicleParams { m: 1.0, g: 9.81, l: 0.1, m1: 2.0, m2: 3.0, m3: 1.0, i11: 1.0, i12: 0.0, i22: 1.0, i3: 1.0 }
}

pub fn bundled_config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}
