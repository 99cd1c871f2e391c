//! Cyclic Jacobi eigenvalues and the definiteness classifier.

use serde::{Deserialize, Serialize};

use super::SymMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_REL_TOL: f64 = 1e-13;

/// Eigenvalues within `DEFINITENESS_REL_EPS * max(1, |λ|_max)` of zero are
/// reported as marginal.
pub const DEFINITENESS_REL_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitenessClass {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Definiteness {
    pub class: DefinitenessClass,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

/// Ascending eigenvalues by cyclic Jacobi rotations, iterated until the
/// off-diagonal Frobenius norm is at most `1e-13 |S|_F`.
pub fn sym_eigenvalues(s: &SymMatrix) -> Result<Vec<f64>> {
    let n = s.dim();
    let mut a: Vec<Vec<f64>> = s.rows();
    let target = OFF_DIAGONAL_REL_TOL * s.frobenius_norm();

    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += a[i][j] * a[i][j];
                }
            }
        }
        sum.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence { sweeps, off_norm: off });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle that annihilates a[p][q] (Rutishauser's form).
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
        sweeps += 1;
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

pub fn classify_definiteness(s: &SymMatrix) -> Result<Definiteness> {
    let eig = sym_eigenvalues(s)?;
    Ok(classify_eigenvalues(&eig))
}

pub(crate) fn classify_eigenvalues(eig: &[f64]) -> Definiteness {
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let largest = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = DEFINITENESS_REL_EPS * largest.max(1.0);
    let class = if eig.iter().any(|v| v.abs() <= threshold) {
        DefinitenessClass::Marginal
    } else if min > threshold {
        DefinitenessClass::PositiveDefinite
    } else if max < -threshold {
        DefinitenessClass::NegativeDefinite
    } else {
        DefinitenessClass::Indefinite
    };
    Definiteness { class, min_eigenvalue: min, max_eigenvalue: max }
}
