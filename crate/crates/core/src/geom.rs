//! Chart machinery shared by both systems: the hat map, unit quaternions,
//! the double cover S³ → SO(3), the open-ball parametrisation of the
//! q0 > 0 hemisphere, and rotation of a reference frame.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Points with `|p| >= 1 - CHART_GUARD` are rejected so that
/// `sqrt(1 - |p|^2)` stays well conditioned.
pub const CHART_GUARD: f64 = 1e-9;

/// Largest norm deviation silently absorbed by [`UnitQuaternion::new`].
pub const QUATERNION_RENORM_TOL: f64 = 1e-9;

/// Skew-symmetric matrix with `hat(v) * w == v × w`.
pub fn hat(v: &Vec3) -> Mat3 {
    Mat3::new(
        0.0, -v.z, v.y, //
        v.z, 0.0, -v.x, //
        -v.y, v.x, 0.0,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    q: [f64; 4],
}

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion { q: [1.0, 0.0, 0.0, 0.0] };

    /// Builds a unit quaternion, renormalising small deviations and
    /// rejecting anything further than [`QUATERNION_RENORM_TOL`] from unit norm.
    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Result<Self> {
        let norm = (q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > QUATERNION_RENORM_TOL {
            return Err(Error::QuaternionNorm { norm, tolerance: QUATERNION_RENORM_TOL });
        }
        if norm == 1.0 {
            return Ok(Self { q: [q0, q1, q2, q3] });
        }
        Ok(Self { q: [q0 / norm, q1 / norm, q2 / norm, q3 / norm] })
    }

    pub fn components(&self) -> [f64; 4] {
        self.q
    }

    pub fn scalar(&self) -> f64 {
        self.q[0]
    }

    pub fn vector(&self) -> Vec3 {
        Vec3::new(self.q[1], self.q[2], self.q[3])
    }

    pub fn norm(&self) -> f64 {
        self.q.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

impl std::ops::Neg for UnitQuaternion {
    type Output = UnitQuaternion;

    fn neg(self) -> UnitQuaternion {
        UnitQuaternion { q: self.q.map(|c| -c) }
    }
}

/// A point of the open unit ball in R³; the vector part of a quaternion
/// on the q0 > 0 hemisphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartVector(Vec3);

impl ChartVector {
    pub const ORIGIN: ChartVector = ChartVector(Vec3::new(0.0, 0.0, 0.0));

    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        Self::try_from(Vec3::new(p1, p2, p3))
    }

    pub fn as_vec(&self) -> &Vec3 {
        &self.0
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }
}

impl TryFrom<Vec3> for ChartVector {
    type Error = Error;

    fn try_from(p: Vec3) -> Result<Self> {
        let norm = p.norm();
        if !norm.is_finite() || norm >= 1.0 - CHART_GUARD {
            return Err(Error::ChartDomain { norm, guard: CHART_GUARD });
        }
        Ok(ChartVector(p))
    }
}

/// The rotation matrix `R^q` of a unit quaternion, entry by entry.
///
/// Every entry is a sum of products of two quaternion components, so
/// `rotation_from_quaternion(q) == rotation_from_quaternion(-q)` bit for bit.
pub fn rotation_from_quaternion(q: &UnitQuaternion) -> Mat3 {
    let [q0, q1, q2, q3] = q.q;
    Mat3::new(
        q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3,
        2.0 * (q1 * q2 - q0 * q3),
        2.0 * (q1 * q3 + q0 * q2),
        2.0 * (q1 * q2 + q0 * q3),
        q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3,
        2.0 * (q2 * q3 - q0 * q1),
        2.0 * (q1 * q3 - q0 * q2),
        2.0 * (q2 * q3 + q0 * q1),
        q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3,
    )
}

/// Lifts a ball point to the q0 > 0 hemisphere: `(sqrt(1 - |p|^2), p)`.
pub fn ball_to_sphere(p: &ChartVector) -> UnitQuaternion {
    let v = p.0;
    let q0 = (1.0 - v.norm_squared()).sqrt();
    UnitQuaternion { q: [q0, v.x, v.y, v.z] }
}

/// Drops the scalar part; inverse of [`ball_to_sphere`] on the q0 > 0 hemisphere.
pub fn sphere_to_ball(q: &UnitQuaternion) -> Result<ChartVector> {
    if q.scalar() <= 0.0 {
        return Err(Error::ChartDomain { norm: q.vector().norm(), guard: CHART_GUARD });
    }
    ChartVector::try_from(q.vector())
}

/// Chart rotation for a ball point.
pub fn chart_rotation(p: &ChartVector) -> Mat3 {
    rotation_from_quaternion(&ball_to_sphere(p))
}

/// Applies the chart rotation of `p` to a reference frame.
pub fn rotate_frame(p: &ChartVector, e1: &Vec3, e2: &Vec3, e3: &Vec3) -> (Vec3, Vec3, Vec3) {
    let r = chart_rotation(p);
    (r * e1, r * e2, r * e3)
}

/// `|M^T M - I|_F <= tol` and `|det M - 1| <= tol`.
pub fn is_special_orthogonal(m: &Mat3, tol: f64) -> bool {
    let gram_err = (m.transpose() * m - Mat3::identity()).norm();
    let det_err = (m.determinant() - 1.0).abs();
    gram_err <= tol && det_err <= tol
}
