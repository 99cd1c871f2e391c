//! Documents printed by the command-line front end.

use serde::{Deserialize, Serialize};

use super::config::{OrbitSummary, Resolved, RunConfig};
use super::simulate::SimulationSummary;
use crate::numerics::{Definiteness, SymMatrix};
use crate::spacecraft::{AsteroidParams, SpacecraftStabilityReport};
use crate::underwater::UnderwaterStabilityReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

/// Wall-clock time of the command, only present with `--timing`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemReport {
    Spacecraft(SpacecraftStabilityReport),
    Underwater(UnderwaterStabilityReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub resolved: Resolved,
    pub report: SystemReport,
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    /// Relative Frobenius deviation of the closed form from the
    /// central-difference Hessian.
    pub relative_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianDocument {
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub resolved: Resolved,
    /// Coordinate order `(Π1, Π2, Π3, p1, p2, p3)`.
    pub hessian: SymMatrix,
    pub eigenvalues: Vec<f64>,
    pub definiteness: Definiteness,
    pub fd_check: Option<FdCheck>,
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationDocument {
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub resolved: Resolved,
    pub simulation: SimulationSummary,
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CastaliaSigns {
    pub k1_less_than_k3: bool,
    /// `ω_T² > 2 (k2 − k1)`
    pub spin_exceeds_gradient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CastaliaDocument {
    pub tool: ToolInfo,
    pub asteroid: AsteroidParams,
    /// m³/s²
    pub gm: f64,
    pub orbit: OrbitSummary,
    /// `(k1, k2, k3)` at the selected radius.
    pub k: [f64; 3],
    pub signs: CastaliaSigns,
    /// Inertia orderings that make the orbit stable at the selected radius.
    pub sufficient_orderings: Vec<String>,
    pub conclusion: String,
    pub timing: Option<Timing>,
}
