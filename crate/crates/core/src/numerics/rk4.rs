//! Fixed-step classical RK4 with conserved-quantity drift monitoring.
//!
//! Conservation is measured, never enforced: there is no projection back
//! onto invariant manifolds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A scalar function of the state whose drift is tracked.
pub type Invariant<'a> = &'a dyn Fn(&[f64]) -> f64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// Per invariant: `max_t |g(x_t) - g(x_0)| / max(1, |g(x_0)|)` over every step.
    pub drift: Vec<f64>,
}

/// Integrates `dx/dt = field(x)` and records every step.
pub fn rk4_integrate<F>(field: F, x0: &[f64], dt: f64, steps: usize, invariants: &[Invariant]) -> Result<Trajectory>
where
    F: Fn(&[f64], &mut [f64]),
{
    rk4_integrate_observed(field, x0, dt, steps, 1, invariants, |_, _, _| {})
}

/// As [`rk4_integrate`], recording only every `record_every`-th step (the
/// initial and final states are always kept) and handing every step to
/// `observer(step, t, x)`. Drift is still measured at every step.
pub fn rk4_integrate_observed<F, O>(
    field: F,
    x0: &[f64],
    dt: f64,
    steps: usize,
    record_every: usize,
    invariants: &[Invariant],
    mut observer: O,
) -> Result<Trajectory>
where
    F: Fn(&[f64], &mut [f64]),
    O: FnMut(usize, f64, &[f64]),
{
    assert!(dt > 0.0 && dt.is_finite(), "dt must be positive, got {dt}");
    assert!(steps >= 1, "need at least one step");
    assert!(record_every >= 1);

    let n = x0.len();
    let reference: Vec<f64> = invariants.iter().map(|g| g(x0)).collect();
    let mut drift = vec![0.0f64; invariants.len()];

    let mut x = x0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];

    let mut times = vec![0.0];
    let mut states = vec![x.clone()];
    observer(0, 0.0, &x);

    for step in 1..=steps {
        field(&x, &mut k1);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * dt * k1[i];
        }
        field(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * dt * k2[i];
        }
        field(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] + dt * k3[i];
        }
        field(&tmp, &mut k4);
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { step });
        }

        for ((g, g0), d) in invariants.iter().zip(&reference).zip(drift.iter_mut()) {
            let rel = (g(&x) - g0).abs() / g0.abs().max(1.0);
            *d = d.max(rel);
        }

        let t = step as f64 * dt;
        observer(step, t, &x);
        if step % record_every == 0 || step == steps {
            times.push(t);
            states.push(x.clone());
        }
    }

    Ok(Trajectory { times, states, drift })
}
