//! Reduced Hamiltonian on the leaf chart, its closed-form Hessian at the
//! equilibrium, and the three-inequality stability test.

use serde::{Deserialize, Serialize};

use super::dynamics::{chart_state, equilibrium, hamiltonian};
use super::{SpacecraftParams, SpacecraftState};
use crate::error::{Error, Result};
use crate::geom::{ChartVector, Vec3};
use crate::numerics::{classify_definiteness, fd_gradient, sym_eigenvalues, Definiteness, DefinitenessClass, SymMatrix};
use crate::Verdict;

/// Hamiltonian at chart coordinates `(Π, p)`.
pub fn reduced_hamiltonian(pi: &Vec3, p: &ChartVector, params: &SpacecraftParams) -> f64 {
    hamiltonian(&chart_state(pi, p), params)
}

/// [`reduced_hamiltonian`] on a flat `(Π1, Π2, Π3, p1, p2, p3)` slice.
pub fn reduced_hamiltonian_at(x: &[f64], params: &SpacecraftParams) -> Result<f64> {
    assert_eq!(x.len(), 6);
    let p = ChartVector::new(x[3], x[4], x[5])?;
    Ok(reduced_hamiltonian(&Vec3::new(x[0], x[1], x[2]), &p, params))
}

/// Closed-form Hessian of the reduced Hamiltonian at `(Π^e, 0)` in the
/// coordinate order `(Π1, Π2, Π3, p1, p2, p3)`.
pub fn reduced_hessian(params: &SpacecraftParams) -> SymMatrix {
    let [i1, i2, i3] = params.inertia;
    let [k1, k2, k3] = params.k;
    let w = params.omega_t;
    let h44 = 4.0 * (w * w * i2 + 2.0 * (i3 - i2) * (k2 - k3));
    let h55 = 8.0 * (i3 - i1) * (k1 - k3);
    let h66 = 4.0 * (w * w * i2 + 2.0 * (i1 - i2) * (k2 - k1));
    let mut h = SymMatrix::from_diagonal(&[1.0 / i1, 1.0 / i2, 1.0 / i3, h44, h55, h66]);
    h.set(0, 5, -2.0 * w);
    h.set(2, 3, 2.0 * w);
    h
}

/// The six inertia/gravity patterns under which the three inequalities are
/// known to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "vi")]
    VI,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::I => "i",
            Regime::II => "ii",
            Regime::III => "iii",
            Regime::IV => "iv",
            Regime::V => "v",
            Regime::VI => "vi",
        }
    }

    pub fn classify(params: &SpacecraftParams) -> Option<Regime> {
        let [i1, i2, i3] = params.inertia;
        let [k1, k2, k3] = params.k;
        let w2 = params.omega_t * params.omega_t;
        let lo1 = 2.0 * (k2 - k1);
        let lo3 = 2.0 * (k2 - k3);
        if k1 > k3 {
            if i2 > i3 && i3 > i1 && w2 > lo3 {
                Some(Regime::I)
            } else if i3 > i2 && i2 > i1 && lo1 < w2 && w2 < lo3 {
                Some(Regime::II)
            } else if i3 > i1 && i1 > i2 && w2 < lo1 {
                Some(Regime::III)
            } else {
                None
            }
        } else if k1 < k3 {
            if i2 > i1 && i1 > i3 && w2 > lo1 {
                Some(Regime::IV)
            } else if i1 > i2 && i2 > i3 && lo3 < w2 && w2 < lo1 {
                Some(Regime::V)
            } else if i1 > i3 && i3 > i2 && w2 < lo3 {
                Some(Regime::VI)
            } else {
                None
            }
        } else {
            None
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacecraftStabilityReport {
    pub equilibrium: SpacecraftState,
    /// Largest finite-difference gradient component of the reduced
    /// Hamiltonian at `(Π^e, 0)`.
    pub critical_residual: f64,
    pub hessian: SymMatrix,
    pub eigenvalues: Vec<f64>,
    pub definiteness: Definiteness,
    /// `(I3 − I1)(k1 − k3) > 0`
    pub condition1: bool,
    /// `(I2 − I1)(ω_T² − 2(k2 − k1)) > 0`
    pub condition2: bool,
    /// `(I2 − I3)(ω_T² − 2(k2 − k3)) > 0`
    pub condition3: bool,
    pub verdict: Verdict,
    pub regime: Option<Regime>,
}

pub fn stability_conditions(params: &SpacecraftParams) -> [bool; 3] {
    let [i1, i2, i3] = params.inertia;
    let [k1, k2, k3] = params.k;
    let w2 = params.omega_t * params.omega_t;
    [
        (i3 - i1) * (k1 - k3) > 0.0,
        (i2 - i1) * (w2 - 2.0 * (k2 - k1)) > 0.0,
        (i2 - i3) * (w2 - 2.0 * (k2 - k3)) > 0.0,
    ]
}

/// Evaluates the three inequalities and cross-checks them against the
/// definiteness of the closed-form Hessian.
///
/// The verdict follows the inequalities. A positive-definite Hessian with a
/// failed inequality, or satisfied inequalities with an indefinite Hessian,
/// is reported as [`Error::InternalInconsistency`]; a marginal Hessian is
/// tolerated since rounding decides it either way.
pub fn stability_analysis(params: &SpacecraftParams) -> Result<SpacecraftStabilityReport> {
    params.validate()?;
    let eq = equilibrium(params);
    let hessian = reduced_hessian(params);
    let eigenvalues = sym_eigenvalues(&hessian)?;
    let definiteness = classify_definiteness(&hessian)?;

    let x0 = [eq.pi.x, eq.pi.y, eq.pi.z, 0.0, 0.0, 0.0];
    let grad = fd_gradient(|x| reduced_hamiltonian_at(x, params), &x0)?;
    let critical_residual = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));

    let [c1, c2, c3] = stability_conditions(params);
    let all = c1 && c2 && c3;
    let pd = definiteness.class == DefinitenessClass::PositiveDefinite;
    let contradicted = match definiteness.class {
        DefinitenessClass::Marginal => false,
        _ => all != pd,
    };
    if contradicted {
        return Err(Error::InternalInconsistency(format!(
            "inequalities {:?} disagree with Hessian class {:?} (eigenvalues {eigenvalues:?})",
            [c1, c2, c3],
            definiteness.class
        )));
    }

    let regime = Regime::classify(params);
    if regime.is_some() && !all {
        return Err(Error::InternalInconsistency(format!("regime {regime:?} matched but inequalities fail")));
    }

    Ok(SpacecraftStabilityReport {
        equilibrium: eq,
        critical_residual,
        hessian,
        eigenvalues,
        definiteness,
        condition1: c1,
        condition2: c2,
        condition3: c3,
        verdict: if all { Verdict::StableSufficient } else { Verdict::Inconclusive },
        regime,
    })
}
