//! Scan-and-bisect root finding on an interval.

/// Default number of scan cells for [`bracketed_roots`].
pub const DEFAULT_SCAN_CELLS: usize = 2000;

/// A scan node with `|f| <= NODE_ROOT_FLOOR` is itself reported as a root.
const NODE_ROOT_FLOOR: f64 = 1e-300;
const BISECTION_REL_WIDTH: f64 = 1e-12;
const MAX_BISECTIONS: usize = 2000;

/// Scans `n_scan` uniform cells of `[lo, hi]` for sign changes and bisects
/// every bracket. Returns the roots in ascending order.
///
/// Bisection stops once the bracket is narrower than `1e-12` relative and
/// the midpoint no longer separates the endpoints, so roots are resolved to
/// the floating-point grid.
pub fn bracketed_roots<F>(f: F, lo: f64, hi: f64, n_scan: usize) -> Vec<f64>
where
    F: Fn(f64) -> f64,
{
    assert!(lo < hi, "empty interval [{lo}, {hi}]");
    assert!(n_scan >= 2, "need at least two scan cells");

    let node = |i: usize| lo + (hi - lo) * (i as f64) / (n_scan as f64);
    let xs: Vec<f64> = (0..=n_scan).map(node).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let on_node = |v: f64| v.abs() <= NODE_ROOT_FLOOR;

    let mut roots = Vec::new();
    for i in 0..=n_scan {
        if on_node(fs[i]) {
            roots.push(xs[i]);
            continue;
        }
        if i == n_scan || on_node(fs[i + 1]) {
            continue;
        }
        let (fa, fb) = (fs[i], fs[i + 1]);
        if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
            continue;
        }
        roots.push(bisect(&f, xs[i], xs[i + 1], fa));
    }
    roots
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    debug_assert!((b - a) <= BISECTION_REL_WIDTH * a.abs().max(b.abs()) || a == 0.0);
    let fb = f(b);
    if f(a).abs() <= fb.abs() {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(bracketed_roots(|x| x * x - 1.0, 0.0, 3.0, 300), vec![1.0]);
        let r = bracketed_roots(|x| x.powi(5) - 32.0, 0.0, 3.0, 300);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() <= 1e-12 * 2.0);
        assert!(bracketed_roots(|x| x * x + 1.0, -3.0, 3.0, 100).is_empty());
    }

    #[test]
    fn several_roots_sorted() {
        let r = bracketed_roots(|x| (x - 0.3) * (x + 1.7) * (x - 2.2), -5.0, 5.0, 2000);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-1.7, 0.3, 2.2]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn root_on_scan_node_reported_once() {
        // x = 0 is node 50 of 100
        let r = bracketed_roots(|x| x, -1.0, 1.0, 100);
        assert_eq!(r, vec![0.0]);
    }

    proptest! {
        #[test]
        fn residual_and_ordering(a in -4.0f64..4.0, b in -4.0f64..4.0, c in 0.1f64..3.0) {
            prop_assume!((a - b).abs() > 0.05);
            let f = |x: f64| c * (x - a) * (x - b) * (x * x + 1.0);
            let roots = bracketed_roots(f, -5.0, 5.0, 2000);
            prop_assert_eq!(roots.len(), 2);
            prop_assert!(roots[0] < roots[1]);
            let h = 10.0 / 2000.0;
            for &r in &roots {
                let scale = f(r - h).abs().max(f(r + h).abs());
                prop_assert!(f(r).abs() <= 1e-9 * scale);
            }
        }
    }
}
