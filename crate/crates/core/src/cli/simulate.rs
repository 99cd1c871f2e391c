//! Perturbed-equilibrium simulations with drift and displacement tracking.
//!
//! The initial state is built in chart coordinates so it stays on the
//! equilibrium's leaf: with `d` a seeded unit 6-vector and `ε` the
//! perturbation size,
//!
//! ```text
//! Π(0) = Π^e + ε Π_ref (d1, d2, d3),    p(0) = ε (d4, d5, d6).
//! ```
//!
//! `Π_ref` is a momentum scale for the model (see [`momentum_scale`]).
//! Displacements are measured in the same scaled units: momentum
//! components are divided by `Π_ref`, linear impulse by `|Q2e|`, and the
//! remaining (unit-vector) components are taken as they are.
//!
//! `d` comes from SplitMix64 seeded with `seed` as its state: each draw
//! `u` gives the component `2·(u >> 11)·2⁻⁵³ − 1`; six draws are
//! normalised, and the draw is repeated if their norm is below `1e-3`.

use std::io::Write;

use rand_core::Rng;
use rand_xoshiro::rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::config::{Resolved, SimulationConfig};
use super::CliError;
use crate::geom::{ChartVector, Vec3};
use crate::numerics::{rk4_integrate_observed, Invariant};
use crate::spacecraft::{self, SpacecraftParams, SpacecraftState};
use crate::underwater::{self, UnderwaterState, Vehicle, VehicleParams};

/// Seeded unit direction in the six chart coordinates.
pub fn perturbation_direction(seed: u64) -> [f64; 6] {
    let mut rng = SplitMix64::seed_from_u64(seed);
    loop {
        let mut d = [0.0; 6];
        for c in d.iter_mut() {
            *c = 2.0 * ((rng.next_u64() >> 11) as f64 * f64::powi(2.0, -53)) - 1.0;
        }
        let norm = d.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm >= 1e-3 {
            return d.map(|c| c / norm);
        }
    }
}

/// `Π_ref`: `max(I) sqrt(ω_T² + 2 max|k|)` for the spacecraft,
/// `sqrt(max(I11, I22, I3) mgl) + |Π^e|` for the vehicle; 1 if that is zero.
pub fn momentum_scale(resolved: &Resolved) -> f64 {
    let s = match resolved {
        Resolved::Spacecraft { params, .. } => {
            let i_max = params.inertia.iter().cloned().fold(0.0, f64::max);
            let k_max = params.k.iter().fold(0.0f64, |m, k| m.max(k.abs()));
            i_max * (params.omega_t * params.omega_t + 2.0 * k_max).sqrt()
        }
        Resolved::Underwater { vehicle: v, q2e } => {
            let i_max = v.i11.max(v.i22).max(v.i3);
            (i_max * v.m * v.g * v.l).sqrt() + (v.m * v.l / v.m2 * q2e).abs()
        }
    };
    if s > 0.0 && s.is_finite() {
        s
    } else {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantDrift {
    pub name: String,
    pub initial: f64,
    /// `max_t |g(t) − g(0)| / max(1, |g(0)|)`.
    pub max_relative_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub steps: usize,
    pub dt: f64,
    pub final_time: f64,
    pub perturbation: f64,
    pub seed: u64,
    pub direction: [f64; 6],
    pub momentum_scale: f64,
    pub initial_state: Vec<f64>,
    pub final_state: Vec<f64>,
    pub invariants: Vec<InvariantDrift>,
    /// Largest scaled distance from the equilibrium over every step.
    pub max_distance: f64,
    pub rows_written: usize,
}

type BoxedInvariant = Box<dyn Fn(&[f64]) -> f64>;
type BoxedField = Box<dyn Fn(&[f64], &mut [f64])>;

struct Model {
    columns: Vec<String>,
    invariant_names: Vec<&'static str>,
    invariants: Vec<BoxedInvariant>,
    field: BoxedField,
    x0: Vec<f64>,
    equilibrium: Vec<f64>,
    scale: Vec<f64>,
}

fn state_columns(blocks: &[&str]) -> Vec<String> {
    blocks.iter().flat_map(|b| (1..=3).map(move |i| format!("{b}{i}"))).collect()
}

fn spacecraft_model(params: SpacecraftParams, eps: f64, d: &[f64; 6], pi_ref: f64) -> crate::Result<Model> {
    let eq = spacecraft::equilibrium(&params);
    let pi0 = eq.pi + Vec3::new(d[0], d[1], d[2]) * (eps * pi_ref);
    let p0 = ChartVector::new(eps * d[3], eps * d[4], eps * d[5])?;
    let x0 = spacecraft::chart_state(&pi0, &p0).to_array();

    let mut invariants: Vec<BoxedInvariant> =
        vec![Box::new(move |x: &[f64]| spacecraft::hamiltonian(&SpacecraftState::from_slice(x), &params))];
    for i in 0..6 {
        invariants.push(Box::new(move |x: &[f64]| spacecraft::casimirs(&SpacecraftState::from_slice(x))[i]));
    }
    let mut scale = vec![pi_ref; 3];
    scale.extend([1.0; 9]);
    Ok(Model {
        columns: state_columns(&["Pi", "alpha", "beta", "gamma"]),
        invariant_names: vec!["H", "C11", "C12", "C13", "C22", "C23", "C33"],
        invariants,
        field: Box::new(move |x, dx| {
            dx.copy_from_slice(&spacecraft::vector_field(&SpacecraftState::from_slice(x), &params))
        }),
        x0: x0.to_vec(),
        equilibrium: eq.to_array().to_vec(),
        scale,
    })
}

fn underwater_model(v: &VehicleParams, q2e: f64, eps: f64, d: &[f64; 6], pi_ref: f64) -> crate::Result<Model> {
    let vehicle = Vehicle::new(v)?;
    let eq = underwater::equilibrium(q2e, v)?;
    let pi0 = eq.pi + Vec3::new(d[0], d[1], d[2]) * (eps * pi_ref);
    let p0 = ChartVector::new(eps * d[3], eps * d[4], eps * d[5])?;
    let x0 = underwater::chart_state(&pi0, &p0, q2e).to_array();

    let mut invariants: Vec<BoxedInvariant> =
        vec![Box::new(move |x: &[f64]| vehicle.hamiltonian(&UnderwaterState::from_slice(x)))];
    for i in 0..3 {
        invariants.push(Box::new(move |x: &[f64]| underwater::casimirs(&UnderwaterState::from_slice(x))[i]));
    }
    let mut scale = vec![pi_ref; 3];
    scale.extend([q2e.abs(); 3]);
    scale.extend([1.0; 3]);
    Ok(Model {
        columns: state_columns(&["Pi", "Q", "Gamma"]),
        invariant_names: vec!["H", "C11", "C12", "C22"],
        invariants,
        field: Box::new(move |x, dx| dx.copy_from_slice(&vehicle.vector_field(&UnderwaterState::from_slice(x)))),
        x0: x0.to_vec(),
        equilibrium: eq.to_array().to_vec(),
        scale,
    })
}

/// Integrates the perturbed equilibrium with RK4. When `csv` is given, the
/// trajectory is written to it: `t`, the state components, then one column
/// per invariant, every `record_every` steps plus the final step.
pub fn simulate(
    resolved: &Resolved,
    sim: &SimulationConfig,
    csv: Option<&mut dyn Write>,
) -> Result<SimulationSummary, CliError> {
    let direction = perturbation_direction(sim.seed);
    let pi_ref = momentum_scale(resolved);
    let model = match resolved {
        Resolved::Spacecraft { params, .. } => spacecraft_model(*params, sim.perturbation, &direction, pi_ref)?,
        Resolved::Underwater { vehicle, q2e } => underwater_model(vehicle, *q2e, sim.perturbation, &direction, pi_ref)?,
    };

    let mut csv = csv;
    let mut io_error: Option<std::io::Error> = None;
    let mut rows_written = 0;
    if let Some(out) = csv.as_deref_mut() {
        let header: Vec<&str> = std::iter::once("t")
            .chain(model.columns.iter().map(String::as_str))
            .chain(model.invariant_names.iter().copied())
            .collect();
        if let Err(e) = writeln!(out, "{}", header.join(",")) {
            io_error = Some(e);
        }
    }

    let mut max_distance = 0.0f64;
    let invariant_refs: Vec<Invariant> = model.invariants.iter().map(|g| g.as_ref() as Invariant).collect();
    let trajectory = rk4_integrate_observed(
        &model.field,
        &model.x0,
        sim.dt,
        sim.steps,
        sim.steps,
        &invariant_refs,
        |step, t, x| {
            for ((xi, ei), si) in x.iter().zip(&model.equilibrium).zip(&model.scale) {
                max_distance = max_distance.max((xi - ei).abs() / si);
            }
            if io_error.is_some() || (step % sim.record_every != 0 && step != sim.steps) {
                return;
            }
            if let Some(out) = csv.as_deref_mut() {
                let mut line = format!("{t:.16e}");
                for v in x.iter().copied().chain(model.invariants.iter().map(|g| g(x))) {
                    line.push_str(&format!(",{v:.16e}"));
                }
                match writeln!(out, "{line}") {
                    Ok(()) => rows_written += 1,
                    Err(e) => io_error = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = io_error {
        return Err(CliError::Io(format!("writing trajectory: {e}")));
    }

    let invariants = model
        .invariant_names
        .iter()
        .zip(&model.invariants)
        .zip(&trajectory.drift)
        .map(|((name, g), drift)| InvariantDrift {
            name: name.to_string(),
            initial: g(&model.x0),
            max_relative_drift: *drift,
        })
        .collect();

    Ok(SimulationSummary {
        steps: sim.steps,
        dt: sim.dt,
        final_time: *trajectory.times.last().expect("at least one step"),
        perturbation: sim.perturbation,
        seed: sim.seed,
        direction,
        momentum_scale: pi_ref,
        initial_state: model.x0.clone(),
        final_state: trajectory.states.last().expect("at least one step").clone(),
        invariants,
        max_distance,
        rows_written,
    })
}
