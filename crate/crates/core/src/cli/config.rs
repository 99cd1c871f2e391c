//! Run configuration files (JSON) and their resolution into model parameters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::error::Error;
use crate::spacecraft::{gravity_coefficients, stationary_orbit_radii, AsteroidParams, SpacecraftParams};
use crate::underwater::VehicleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Spacecraft,
    Underwater,
}

/// A spacecraft whose gravity-gradient coefficients come from an asteroid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsteroidOrbitBlock {
    pub asteroid: AsteroidParams,
    /// Spacecraft principal moments, kg·m².
    pub inertia: [f64; 3],
    /// Stationary-orbit radius, m. Defaults to the largest feasible root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderwaterBlock {
    pub vehicle: VehicleParams,
    /// Linear impulse `Q2` of the equilibrium, kg·m/s.
    pub q2e: f64,
}

fn one() -> usize {
    1
}

fn is_one(n: &usize) -> bool {
    *n == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    /// s
    pub dt: f64,
    pub steps: usize,
    /// Size of the initial displacement in scaled chart coordinates.
    pub perturbation: f64,
    pub seed: u64,
    /// Write every n-th step to the trajectory file.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub record_every: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: System,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacecraft: Option<SpacecraftParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asteroid_orbit: Option<AsteroidOrbitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub underwater: Option<UnderwaterBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationConfig>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            CliError::Config(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        cfg.check_shape()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn check_shape(&self) -> Result<(), CliError> {
        let blocks = [
            ("spacecraft", self.spacecraft.is_some(), System::Spacecraft),
            ("asteroid_orbit", self.asteroid_orbit.is_some(), System::Spacecraft),
            ("underwater", self.underwater.is_some(), System::Underwater),
        ];
        let present: Vec<_> = blocks.iter().filter(|b| b.1).collect();
        match present.as_slice() {
            [(_, _, sys)] if *sys == self.system => {}
            [(name, _, _)] => {
                return Err(CliError::Config(format!("block `{name}` does not match system {:?}", self.system)))
            }
            [] => return Err(CliError::Config("missing parameter block".into())),
            _ => {
                let names: Vec<_> = present.iter().map(|b| b.0).collect();
                return Err(CliError::Config(format!("expected one parameter block, found {}", names.join(", "))));
            }
        }
        if let Some(sim) = &self.simulation {
            if !(sim.dt > 0.0 && sim.dt.is_finite()) {
                return Err(CliError::Config(format!("simulation.dt must be positive, got {}", sim.dt)));
            }
            if sim.steps == 0 {
                return Err(CliError::Config("simulation.steps must be at least 1".into()));
            }
            if !(sim.perturbation >= 0.0 && sim.perturbation < 0.5) {
                return Err(CliError::Config(format!(
                    "simulation.perturbation must lie in [0, 0.5), got {}",
                    sim.perturbation
                )));
            }
            if sim.record_every == 0 {
                return Err(CliError::Config("simulation.record_every must be at least 1".into()));
            }
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        if let Some(p) = &self.spacecraft {
            p.validate()?;
            return Ok(Resolved::Spacecraft { params: *p, orbit: None });
        }
        if let Some(block) = &self.asteroid_orbit {
            let orbit = OrbitSummary::new(&block.asteroid, block.orbit_radius)?;
            let params = SpacecraftParams::from_asteroid(block.inertia, &block.asteroid, orbit.selected_radius)?;
            return Ok(Resolved::Spacecraft { params, orbit: Some(orbit) });
        }
        let block = self.underwater.as_ref().expect("shape checked at parse time");
        block.vehicle.validate()?;
        Ok(Resolved::Underwater { vehicle: block.vehicle, q2e: block.q2e })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEntry {
    /// m
    pub radius: f64,
    pub feasible: bool,
    /// `(k1, k2, k3)` at this radius, s⁻².
    pub k: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub radii: Vec<RadiusEntry>,
    pub selected_radius: f64,
}

impl OrbitSummary {
    pub fn new(asteroid: &AsteroidParams, requested: Option<f64>) -> crate::Result<Self> {
        let radii: Vec<_> = stationary_orbit_radii(asteroid)?
            .into_iter()
            .map(|o| RadiusEntry { radius: o.radius, feasible: o.feasible, k: gravity_coefficients(asteroid, o.radius) })
            .collect();
        let selected_radius = match requested {
            Some(r) => r,
            None => radii
                .iter()
                .rev()
                .find(|e| e.feasible)
                .map(|e| e.radius)
                .ok_or_else(|| Error::Admissibility("the asteroid has no feasible stationary orbit".into()))?,
        };
        Ok(OrbitSummary { radii, selected_radius })
    }
}

/// Model parameters after all derived quantities are filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolved {
    Spacecraft {
        params: SpacecraftParams,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit: Option<OrbitSummary>,
    },
    Underwater {
        vehicle: VehicleParams,
        q2e: f64,
    },
}
