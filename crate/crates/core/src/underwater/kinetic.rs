//! Mass/inertia blocks and their closed-form inverse.

use serde::{Deserialize, Serialize};

use super::{VehicleParams, OFFSET_DIRECTION};
use crate::error::{Error, Result};
use crate::geom::{hat, Mat3};

/// `M = diag(m1, m2, m3)`, `J` with the third axis principal, `D = ml r̂`.
pub fn mass_matrices(v: &VehicleParams) -> Result<(Mat3, Mat3, Mat3)> {
    v.validate()?;
    admissibility(v).require()?;
    Ok(mass_matrices_unchecked(v))
}

pub(crate) fn mass_matrices_unchecked(v: &VehicleParams) -> (Mat3, Mat3, Mat3) {
    let m = Mat3::from_diagonal(&[v.m1, v.m2, v.m3].into());
    let j = Mat3::new(v.i11, v.i12, 0.0, v.i12, v.i22, 0.0, 0.0, 0.0, v.i3);
    let d = hat(&OFFSET_DIRECTION) * v.ml();
    (m, j, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalInequalities {
    pub m1_positive: bool,
    pub m2_positive: bool,
    pub m3_positive: bool,
    pub i11_positive: bool,
    pub i22_positive: bool,
    pub inertia_determinant_positive: bool,
    pub i3_positive: bool,
}

/// Conditions for the 6×6 kinetic matrix to be positive definite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockInequalities {
    /// `m1 I22 > m² l²`
    pub m1_i22_exceeds_offset: bool,
    /// `m2 I11 > m² l²`
    pub m2_i11_exceeds_offset: bool,
    pub k_positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub physical: PhysicalInequalities,
    pub block: BlockInequalities,
    pub k: f64,
}

impl AdmissibilityReport {
    fn failures(&self) -> Vec<&'static str> {
        let p = &self.physical;
        let b = &self.block;
        [
            (p.m1_positive, "m1 > 0"),
            (p.m2_positive, "m2 > 0"),
            (p.m3_positive, "m3 > 0"),
            (p.i11_positive, "I11 > 0"),
            (p.i22_positive, "I22 > 0"),
            (p.inertia_determinant_positive, "I11 I22 - I12^2 > 0"),
            (p.i3_positive, "I3 > 0"),
            (b.m1_i22_exceeds_offset, "m1 I22 > m^2 l^2"),
            (b.m2_i11_exceeds_offset, "m2 I11 > m^2 l^2"),
            (b.k_positive, "k > 0"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn require(&self) -> Result<()> {
        let failed = self.failures();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Admissibility(format!("violated: {}", failed.join(", "))))
        }
    }
}

fn k_value(v: &VehicleParams) -> f64 {
    let l2 = v.ml() * v.ml();
    v.m1 * v.m2 * (v.i11 * v.i22 - v.i12 * v.i12) - l2 * (v.m1 * v.i22 + v.m2 * v.i11) + l2 * l2
}

pub fn admissibility(v: &VehicleParams) -> AdmissibilityReport {
    let l2 = v.ml() * v.ml();
    let k = k_value(v);
    AdmissibilityReport {
        physical: PhysicalInequalities {
            m1_positive: v.m1 > 0.0,
            m2_positive: v.m2 > 0.0,
            m3_positive: v.m3 > 0.0,
            i11_positive: v.i11 > 0.0,
            i22_positive: v.i22 > 0.0,
            inertia_determinant_positive: v.i11 * v.i22 - v.i12 * v.i12 > 0.0,
            i3_positive: v.i3 > 0.0,
        },
        block: BlockInequalities {
            m1_i22_exceeds_offset: v.m1 * v.i22 > l2,
            m2_i11_exceeds_offset: v.m2 * v.i11 > l2,
            k_positive: k > 0.0,
        },
        k,
    }
}

/// Blocks of `(J, D; Dᵀ, M)⁻¹ = (A, Bᵀ; B, C)` and the common denominator `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockKinetic {
    pub a: Mat3,
    pub b: Mat3,
    pub c: Mat3,
    pub k: f64,
}

/// Closed-form inverse of the kinetic matrix.
///
/// The diagonal of `B` is `(m2 ml I12, −m1 ml I12) / k`; with that form the
/// blocks invert `(J, D; Dᵀ, M)` exactly for every admissible `I12`.
pub fn kinetic_inverse(v: &VehicleParams) -> Result<BlockKinetic> {
    v.validate()?;
    let report = admissibility(v);
    report.require()?;

    let (m1, m2, m3) = (v.m1, v.m2, v.m3);
    let (i11, i12, i22, i3) = (v.i11, v.i12, v.i22, v.i3);
    let ml = v.ml();
    let l2 = ml * ml;
    let k = report.k;
    let det_j = i11 * i22 - i12 * i12;

    let a = Mat3::new(
        m2 * (m1 * i22 - l2) / k,
        -m1 * m2 * i12 / k,
        0.0,
        -m1 * m2 * i12 / k,
        m1 * (m2 * i11 - l2) / k,
        0.0,
        0.0,
        0.0,
        1.0 / i3,
    );
    let b = Mat3::new(
        m2 * ml * i12 / k,
        -(m2 * i11 - l2) * ml / k,
        0.0,
        (m1 * i22 - l2) * ml / k,
        -m1 * ml * i12 / k,
        0.0,
        0.0,
        0.0,
        0.0,
    );
    let c = Mat3::new(
        (m2 * det_j - l2 * i22) / k,
        l2 * i12 / k,
        0.0,
        l2 * i12 / k,
        (m1 * det_j - l2 * i11) / k,
        0.0,
        0.0,
        0.0,
        1.0 / m3,
    );
    Ok(BlockKinetic { a, b, c, k })
}

#[cfg(test)]
mod tests {
    use super::super::testing::{admissible_vehicle, reference_vehicle};
    use super::*;
    use nalgebra::SMatrix;
    use proptest::prelude::*;

    type Mat6 = SMatrix<f64, 6, 6>;

    fn assemble(tl: &Mat3, tr: &Mat3, bl: &Mat3, br: &Mat3) -> Mat6 {
        let mut out = Mat6::zeros();
        out.fixed_view_mut::<3, 3>(0, 0).copy_from(tl);
        out.fixed_view_mut::<3, 3>(0, 3).copy_from(tr);
        out.fixed_view_mut::<3, 3>(3, 0).copy_from(bl);
        out.fixed_view_mut::<3, 3>(3, 3).copy_from(br);
        out
    }

    #[test]
    fn mass_matrix_examples() {
        let v = VehicleParams { l: 0.0, ..reference_vehicle() };
        assert_eq!(mass_matrices(&v).unwrap().2, Mat3::zeros());
        let (m, j, d) = mass_matrices(&reference_vehicle()).unwrap();
        assert_eq!(m, Mat3::from_diagonal(&[2.0, 3.0, 1.0].into()));
        assert_eq!(j, Mat3::identity());
        assert_eq!(d, Mat3::new(0.0, -0.1, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn decoupled_inverse() {
        let v = VehicleParams { l: 0.0, i11: 2.0, i22: 4.0, i3: 5.0, ..reference_vehicle() };
        let bk = kinetic_inverse(&v).unwrap();
        assert_eq!(bk.a, Mat3::from_diagonal(&[0.5, 0.25, 0.2].into()));
        assert_eq!(bk.b, Mat3::zeros());
        assert_eq!(bk.c, Mat3::from_diagonal(&[0.5, 1.0 / 3.0, 1.0].into()));
        assert_eq!(bk.k, 2.0 * 3.0 * 2.0 * 4.0);
    }

    #[test]
    fn reference_k() {
        let bk = kinetic_inverse(&reference_vehicle()).unwrap();
        // 2·3·(1·1 − 0) − 0.01·(2·1 + 3·1) + 0.0001
        assert!((bk.k - 5.9501).abs() < 1e-14);
        assert!(admissibility(&reference_vehicle()).all_hold());
    }

    #[test]
    fn boundary_cases_are_inadmissible() {
        let v = VehicleParams { m1: 0.01, ..reference_vehicle() };
        let r = admissibility(&v);
        assert!(!r.block.m1_i22_exceeds_offset);
        assert!(matches!(kinetic_inverse(&v), Err(Error::Admissibility(_))));

        let v = VehicleParams { i12: 1.0, ..reference_vehicle() };
        assert!(!admissibility(&v).physical.inertia_determinant_positive);
        assert!(mass_matrices(&v).is_err());

        let v = VehicleParams { l: -0.1, ..reference_vehicle() };
        assert!(kinetic_inverse(&v).is_err());
    }

    proptest! {
        #[test]
        fn closed_form_inverts_the_kinetic_matrix(v in admissible_vehicle()) {
            let (m, j, d) = mass_matrices(&v).unwrap();
            let bk = kinetic_inverse(&v).unwrap();
            let forward = assemble(&j, &d, &d.transpose(), &m);
            let inverse = assemble(&bk.a, &bk.b.transpose(), &bk.b, &bk.c);
            prop_assert!((inverse * forward - Mat6::identity()).norm() <= 1e-10);
            let dense = forward.try_inverse().unwrap();
            prop_assert!((inverse - dense).norm() <= 1e-10 * dense.norm());
            prop_assert_eq!(bk.a, bk.a.transpose());
            prop_assert_eq!(bk.c, bk.c.transpose());
        }
    }
}
