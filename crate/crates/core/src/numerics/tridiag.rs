//! Lowest eigenpairs of real symmetric tridiagonal matrices via Sturm
//! bisection and inverse iteration.

use crate::error::{Error, Result};

/// Number of eigenvalues strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q.abs() < f64::MIN_POSITIVE { f64::MIN_POSITIVE.copysign(q) } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based).
pub fn eigenvalue(diag: &[f64], off: &[f64], k: usize) -> Result<f64> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n || k >= n {
        return Err(Error::InvalidArgument("malformed tridiagonal matrix".into()));
    }
    // Gershgorin bounds
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Eigenvector for a (converged) eigenvalue by inverse iteration, normalized
/// to unit Euclidean norm with a positive largest component.
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag.iter().fold(1.0_f64, |a, d| a.max(d.abs()));
    let shift = lambda + 1e-10 * scale;
    // asymmetric start so neither parity class is missed
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / n as f64).collect();
    for _ in 0..6 {
        v = solve_shifted(diag, off, shift, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    let peak = v.iter().fold(0.0_f64, |a, &x| if x.abs() > a.abs() { x } else { a });
    if peak < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

// Thomas algorithm with partial safeguarding against tiny pivots.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let tiny = 1e-300;
    let mut b = diag[0] - shift;
    if b.abs() < tiny {
        b = tiny;
    }
    if n > 1 {
        c[0] = off[0] / b;
    }
    d[0] = rhs[0] / b;
    for i in 1..n {
        let mut m = diag[i] - shift - off[i - 1] * c[i - 1];
        if m.abs() < tiny {
            m = tiny;
        }
        if i + 1 < n {
            c[i] = off[i] / m;
        }
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Sign changes along a vector, ignoring entries below `1e-10` of its peak.
pub fn node_count(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let mut last = 0.0;
    let mut nodes = 0;
    for &x in v {
        if x.abs() < 1e-10 * peak {
            continue;
        }
        if last != 0.0 && x.signum() != last {
            nodes += 1;
        }
        last = x.signum();
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_laplacian_spectrum() {
        // tridiag(-1, 2, -1): λ_k = 2 - 2cos(kπ/(n+1))
        let n = 50;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        for k in 0..4 {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((eigenvalue(&diag, &off, k).unwrap() - exact).abs() < 1e-13);
        }
        let v = eigenvector(&diag, &off, eigenvalue(&diag, &off, 1).unwrap());
        assert_eq!(node_count(&v), 1);
    }
}
