//! Reduced Hamiltonian around the horizontal-translation equilibrium, its
//! Hessian and the four-condition stability test.

use serde::{Deserialize, Serialize};

use super::dynamics::{chart_state, equilibrium, Vehicle};
use super::kinetic::{admissibility, kinetic_inverse, AdmissibilityReport};
use super::{UnderwaterState, VehicleParams};
use crate::error::{Error, Result};
use crate::geom::{ChartVector, Vec3};
use crate::numerics::{classify_definiteness, fd_gradient, sym_eigenvalues, Definiteness, DefinitenessClass, SymMatrix};
use crate::Verdict;

fn require_nonzero(q2e: f64) -> Result<()> {
    if q2e == 0.0 || !q2e.is_finite() {
        return Err(Error::DegenerateEquilibrium(format!("Q2e must be finite and nonzero, got {q2e}")));
    }
    Ok(())
}

/// Hamiltonian at chart coordinates `(Π, p)` on the leaf of the
/// equilibrium with impulse `Q2e`.
pub fn reduced_hamiltonian(pi: &Vec3, p: &ChartVector, q2e: f64, v: &VehicleParams) -> Result<f64> {
    require_nonzero(q2e)?;
    Ok(Vehicle::new(v)?.hamiltonian(&chart_state(pi, p, q2e)))
}

/// [`reduced_hamiltonian`] on a flat `(Π1, Π2, Π3, p1, p2, p3)` slice.
pub fn reduced_hamiltonian_at(x: &[f64], q2e: f64, v: &VehicleParams) -> Result<f64> {
    assert_eq!(x.len(), 6);
    let p = ChartVector::new(x[3], x[4], x[5])?;
    reduced_hamiltonian(&Vec3::new(x[0], x[1], x[2]), &p, q2e, v)
}

fn hessian_unchecked(q2e: f64, v: &VehicleParams, k: f64) -> SymMatrix {
    let (m1, m2, m3) = (v.m1, v.m2, v.m3);
    let (i11, i12, i22) = (v.i11, v.i12, v.i22);
    let ml = v.ml();
    let l2 = ml * ml;
    let mgl = v.mgl();
    let q2 = q2e * q2e;

    let h66 = -4.0 * q2 / (k * m2) * (k - m2 * m2 * (i11 * i22 - i12 * i12) + m2 * l2 * i22);
    let mut h = SymMatrix::from_diagonal(&[
        m2 / k * (m1 * i22 - l2),
        m1 / k * (m2 * i11 - l2),
        1.0 / v.i3,
        4.0 * (mgl + (1.0 / m3 - 1.0 / m2) * q2),
        4.0 * mgl,
        h66,
    ]);
    h.set(0, 1, -m1 * m2 * i12 / k);
    h.set(0, 5, -2.0 * m2 * ml * i12 / k * q2e);
    h.set(1, 5, 2.0 * ml / k * (m2 * i11 - l2) * q2e);
    h
}

/// Closed-form Hessian of the reduced Hamiltonian at `(Π^e, 0)` in the
/// coordinate order `(Π1, Π2, Π3, p1, p2, p3)`.
pub fn reduced_hessian(q2e: f64, v: &VehicleParams) -> Result<SymMatrix> {
    require_nonzero(q2e)?;
    let bk = kinetic_inverse(v)?;
    Ok(hessian_unchecked(q2e, v, bk.k))
}

fn determinant_unchecked(q2e: f64, v: &VehicleParams, k: f64) -> f64 {
    let mgl = v.mgl();
    let q2 = q2e * q2e;
    64.0 * mgl / (k * v.i3) * (v.m2 - v.m1) * (mgl + (1.0 / v.m3 - 1.0 / v.m2) * q2) * q2
}

/// `(64 mgl / (k I3)) (m2 − m1) (mgl + (1/m3 − 1/m2) Q2²) Q2²`.
pub fn hessian_determinant(q2e: f64, v: &VehicleParams) -> Result<f64> {
    require_nonzero(q2e)?;
    let bk = kinetic_inverse(v)?;
    Ok(determinant_unchecked(q2e, v, bk.k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityConditions {
    /// `Q2e ≠ 0`
    pub q2_nonzero: bool,
    /// `l > 0`
    pub offset_positive: bool,
    /// `mgl > (1/m2 − 1/m3) Q2e²`
    pub restoring_margin: bool,
    /// `m2 > m1`
    pub m2_exceeds_m1: bool,
}

impl StabilityConditions {
    pub fn all_hold(&self) -> bool {
        self.q2_nonzero && self.offset_positive && self.restoring_margin && self.m2_exceeds_m1
    }
}

pub fn stability_conditions(q2e: f64, v: &VehicleParams) -> StabilityConditions {
    StabilityConditions {
        q2_nonzero: q2e != 0.0,
        offset_positive: v.l > 0.0,
        restoring_margin: v.mgl() > (1.0 / v.m2 - 1.0 / v.m3) * q2e * q2e,
        m2_exceeds_m1: v.m2 > v.m1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnderwaterStabilityReport {
    pub equilibrium: UnderwaterState,
    /// Largest finite-difference gradient component of the reduced
    /// Hamiltonian at `(Π^e, 0)`.
    pub critical_residual: f64,
    pub hessian: SymMatrix,
    pub eigenvalues: Vec<f64>,
    pub determinant_closed_form: f64,
    pub definiteness: Definiteness,
    pub admissibility: AdmissibilityReport,
    pub conditions: StabilityConditions,
    pub verdict: Verdict,
}

/// Evaluates the four conditions and cross-checks them against the
/// definiteness of the closed-form Hessian.
///
/// `Q2e = 0` is accepted: the rest state `(0, 0, e3)` is analysed on its own
/// leaf and reported as inconclusive.
pub fn stability_analysis(q2e: f64, v: &VehicleParams) -> Result<UnderwaterStabilityReport> {
    if !q2e.is_finite() {
        return Err(Error::DegenerateEquilibrium(format!("Q2e must be finite, got {q2e}")));
    }
    let vehicle = Vehicle::new(v)?;
    let k = vehicle.kinetic().k;
    let eq = if q2e == 0.0 {
        UnderwaterState { pi: Vec3::zeros(), q: Vec3::zeros(), gamma: Vec3::z() }
    } else {
        equilibrium(q2e, v)?
    };

    let hessian = hessian_unchecked(q2e, v, k);
    let eigenvalues = sym_eigenvalues(&hessian)?;
    let definiteness = classify_definiteness(&hessian)?;
    let determinant_closed_form = determinant_unchecked(q2e, v, k);

    let x0 = [eq.pi.x, eq.pi.y, eq.pi.z, 0.0, 0.0, 0.0];
    let grad = fd_gradient(
        |x| {
            let p = ChartVector::new(x[3], x[4], x[5])?;
            Ok(vehicle.hamiltonian(&chart_state(&Vec3::new(x[0], x[1], x[2]), &p, q2e)))
        },
        &x0,
    )?;
    let critical_residual = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));

    let conditions = stability_conditions(q2e, v);
    let all = conditions.all_hold();
    if all && definiteness.class != DefinitenessClass::PositiveDefinite {
        return Err(Error::InternalInconsistency(format!(
            "all four conditions hold but the Hessian is {:?} (eigenvalues {eigenvalues:?})",
            definiteness.class
        )));
    }

    Ok(UnderwaterStabilityReport {
        equilibrium: eq,
        critical_residual,
        hessian,
        eigenvalues,
        determinant_closed_form,
        definiteness,
        admissibility: admissibility(v),
        conditions,
        verdict: if all { Verdict::StableSufficient } else { Verdict::Inconclusive },
    })
}

#[cfg(test)]
mod tests {
    use super::super::testing::{admissible_vehicle, reference_vehicle};
    use super::*;
    use crate::numerics::fd_hessian;
    use proptest::prelude::*;

    /// `Q(p)` and `Γ(p)` written out as polynomials in `p` with
    /// `s = sqrt(1 - |p|²)`.
    fn leaf_polynomials(p: [f64; 3], q2e: f64) -> (Vec3, Vec3) {
        let [p1, p2, p3] = p;
        let s = (1.0 - (p1 * p1 + p2 * p2 + p3 * p3)).sqrt();
        let q = Vec3::new(
            (2.0 * p1 * p2 - 2.0 * p3 * s) * q2e,
            (1.0 - 2.0 * p1 * p1 - 2.0 * p3 * p3) * q2e,
            (2.0 * p2 * p3 + 2.0 * p1 * s) * q2e,
        );
        let gamma = Vec3::new(
            2.0 * p1 * p3 + 2.0 * p2 * s,
            2.0 * p2 * p3 - 2.0 * p1 * s,
            1.0 - 2.0 * p1 * p1 - 2.0 * p2 * p2,
        );
        (q, gamma)
    }

    fn q2e() -> impl Strategy<Value = f64> {
        (0.2f64..3.0, prop::bool::ANY).prop_map(|(q, s)| if s { q } else { -q })
    }

    #[test]
    fn reference_hessian_entries() {
        let v = reference_vehicle();
        let h = reduced_hessian(1.0, &v).unwrap();
        assert_eq!(h.get(2, 2), 1.0);
        assert!((h.get(4, 4) - 3.924).abs() < 1e-12);
        assert!(matches!(reduced_hessian(0.0, &v), Err(Error::DegenerateEquilibrium(_))));
    }

    #[test]
    fn decoupled_hessian() {
        let v = VehicleParams { l: 0.0, i11: 2.0, i22: 4.0, ..reference_vehicle() };
        let h = reduced_hessian(1.5, &v).unwrap();
        assert_eq!(h.get(0, 1), 0.0);
        assert_eq!(h.get(0, 5), 0.0);
        assert_eq!(h.get(1, 5), 0.0);
        assert_eq!(h.get(0, 0), 0.5);
        assert_eq!(h.get(1, 1), 0.25);
    }

    #[test]
    fn determinant_examples() {
        let v = reference_vehicle();
        let det = hessian_determinant(1.0, &v).unwrap();
        let product: f64 = sym_eigenvalues(&reduced_hessian(1.0, &v).unwrap()).unwrap().iter().product();
        assert!((det - product).abs() <= 1e-8 * det.abs());
        assert_eq!(hessian_determinant(1.0, &VehicleParams { m1: 3.0, ..v }).unwrap(), 0.0);
        assert_eq!(hessian_determinant(1.0, &VehicleParams { l: 0.0, ..v }).unwrap(), 0.0);
    }

    #[test]
    fn verdict_examples() {
        let v = reference_vehicle();
        let r = stability_analysis(1.0, &v).unwrap();
        assert_eq!(r.verdict, Verdict::StableSufficient);
        assert_eq!(r.definiteness.class, DefinitenessClass::PositiveDefinite);
        assert!(r.critical_residual <= 1e-6);
        assert!(r.admissibility.all_hold());

        let swapped = VehicleParams { m1: 3.0, m2: 2.0, ..v };
        let r = stability_analysis(1.0, &swapped).unwrap();
        assert!(!r.conditions.m2_exceeds_m1);
        assert_eq!(r.verdict, Verdict::Inconclusive);

        let r = stability_analysis(1.0, &VehicleParams { l: 0.0, ..v }).unwrap();
        assert!(!r.conditions.offset_positive);
        assert_eq!(r.verdict, Verdict::Inconclusive);

        let r = stability_analysis(0.0, &v).unwrap();
        assert!(!r.conditions.q2_nonzero);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn margin_failure_is_inconclusive() {
        // 1/m2 − 1/m3 > 0 with a large impulse defeats the restoring torque.
        let v = VehicleParams { m3: 5.0, ..reference_vehicle() };
        let r = stability_analysis(3.0, &v).unwrap();
        assert!(!r.conditions.restoring_margin);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_ne!(r.definiteness.class, DefinitenessClass::PositiveDefinite);
    }

    #[test]
    fn verdict_is_independent_of_i12() {
        let base = reference_vehicle();
        let reference = stability_analysis(1.0, &base).unwrap();
        for i in 0..21 {
            let i12 = -0.9 + 0.09 * i as f64;
            let r = stability_analysis(1.0, &VehicleParams { i12, ..base }).unwrap();
            assert_eq!(r.verdict, reference.verdict);
            assert_eq!(r.definiteness.class, reference.definiteness.class);
        }
    }

    proptest! {
        #[test]
        fn rotation_and_polynomial_paths_agree(
            v in admissible_vehicle(),
            q2 in q2e(),
            pi in prop::array::uniform3(-2.0f64..2.0),
            p in prop::array::uniform3(-0.5f64..0.5),
        ) {
            let veh = Vehicle::new(&v).unwrap();
            let (q, gamma) = leaf_polynomials(p, q2);
            let poly = veh.hamiltonian(&UnderwaterState { pi: Vec3::from(pi), q, gamma });
            let chart = reduced_hamiltonian(&Vec3::from(pi), &ChartVector::new(p[0], p[1], p[2]).unwrap(), q2, &v).unwrap();
            prop_assert!((poly - chart).abs() <= 1e-12 * poly.abs().max(1.0));
        }

        #[test]
        fn closed_form_hessian_matches_finite_differences(v in admissible_vehicle(), q2 in q2e()) {
            let e = equilibrium(q2, &v).unwrap();
            let x0 = [e.pi.x, e.pi.y, e.pi.z, 0.0, 0.0, 0.0];
            let fd = fd_hessian(|x| reduced_hamiltonian_at(x, q2, &v), &x0).unwrap();
            let closed = reduced_hessian(q2, &v).unwrap();
            prop_assert!(closed.relative_frobenius_error(&fd) <= 1e-6);
            let grad = fd_gradient(|x| reduced_hamiltonian_at(x, q2, &v), &x0).unwrap();
            prop_assert!(grad.iter().all(|g| g.abs() <= 1e-6));
        }

        #[test]
        fn determinant_is_the_eigenvalue_product(v in admissible_vehicle(), q2 in q2e()) {
            let det = hessian_determinant(q2, &v).unwrap();
            let product: f64 = sym_eigenvalues(&reduced_hessian(q2, &v).unwrap()).unwrap().iter().product();
            prop_assert!((det - product).abs() <= 1e-8 * det.abs().max(product.abs()));
        }

        #[test]
        fn conditions_imply_positive_definite(v in admissible_vehicle(), q2 in q2e()) {
            // stability_analysis raises on a violated implication.
            let r = stability_analysis(q2, &v).unwrap();
            prop_assert_eq!(r.verdict == Verdict::StableSufficient, r.conditions.all_hold());
        }
    }
}
