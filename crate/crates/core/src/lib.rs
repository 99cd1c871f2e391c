//! Lyapunov stability of generic equilibria for two Hamilton–Poisson models:
//! a rigid spacecraft on a stationary orbit around a uniformly rotating
//! asteroid, and a neutrally buoyant underwater vehicle with added mass.
//!
//! Both analyses follow the same recipe. The symplectic leaf through the
//! equilibrium is parametrised by momentum plus the vector part of a unit
//! quaternion (`geom`), the Hamiltonian is written in those six coordinates,
//! and the equilibrium is certified stable when the reduced Hessian is
//! definite. Every closed form is backed by an independent oracle in
//! `numerics` (finite differences, Jacobi eigenvalues, RK4 flow).

pub mod cli;
pub mod error;
pub mod geom;
pub mod numerics;
pub mod spacecraft;
pub mod underwater;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Outcome of a sufficient-condition stability test. `Inconclusive` means
/// the sufficient condition failed, not that the equilibrium is unstable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    StableSufficient,
    Inconclusive,
}
