//! Central-difference gradient and Hessian.

use super::SymMatrix;
use crate::error::Result;

/// Step `scale * max(1, |x|)`, rounded so that `x + h` and `x - h` are exact
/// offsets of `x` in floating point.
fn step(x: f64, scale: f64) -> f64 {
    let h = scale * x.abs().max(1.0);
    (x + h) - x
}

pub fn fd_gradient<F>(f: F, x: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let scale = f64::EPSILON.cbrt();
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let h = step(x[i], scale);
        probe[i] = x[i] + h;
        let fp = f(&probe)?;
        probe[i] = x[i] - h;
        let fm = f(&probe)?;
        probe[i] = x[i];
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

/// Second central differences with step `eps^(1/4) * max(1, |x_i|)`; the
/// off-diagonal four-point stencil is evaluated for both `(i, j)` and
/// `(j, i)` and averaged.
pub fn fd_hessian<F>(f: F, x: &[f64]) -> Result<SymMatrix>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = x.len();
    let scale = f64::EPSILON.sqrt().sqrt();
    let h: Vec<f64> = x.iter().map(|&xi| step(xi, scale)).collect();
    let f0 = f(x)?;
    let mut probe = x.to_vec();

    let mut eval = |offsets: &[(usize, f64)]| -> Result<f64> {
        for &(i, d) in offsets {
            probe[i] += d;
        }
        let v = f(&probe);
        probe.copy_from_slice(x);
        v
    };

    let mut full = vec![vec![0.0; n]; n];
    for i in 0..n {
        let fp = eval(&[(i, h[i])])?;
        let fm = eval(&[(i, -h[i])])?;
        full[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for j in 0..n {
            if j == i {
                continue;
            }
            let fpp = eval(&[(i, h[i]), (j, h[j])])?;
            let fpm = eval(&[(i, h[i]), (j, -h[j])])?;
            let fmp = eval(&[(i, -h[i]), (j, h[j])])?;
            let fmm = eval(&[(i, -h[i]), (j, -h[j])])?;
            full[i][j] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
        }
    }
    Ok(SymMatrix::from_lower_fn(n, |i, j| 0.5 * (full[i][j] + full[j][i])))
}
