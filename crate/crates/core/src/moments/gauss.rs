//! Gauss rules from three-term recurrences (Golub–Welsch).
//!
//! The Jacobi matrix is diagonalised in f64 by implicit QL with Wilkinson
//! shifts. Each eigenvalue is then refined by double-double Newton steps on
//! the orthonormal polynomial of degree n, and the weights are recomputed as
//! Christoffel numbers 1/Σ p̂_k(x)², which keeps tiny tail weights accurate
//! in the relative sense.

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (e[i] couples i and i+1).
fn tridiag_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(std::iter::once(0.0)).collect();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenSolve(iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Orthonormal recurrence values at x: returns (p̂_n(x), p̂_n'(x), Σ_{k<n} p̂_k(x)²).
fn orthonormal_eval(x: Real, diag: &[Real], off: &[Real], mu0: Real) -> (Real, Real, Real) {
    let n = diag.len();
    let mut p_prev = Real::ZERO;
    let mut p = mu0.sqrt().recip();
    let mut dp_prev = Real::ZERO;
    let mut dp = Real::ZERO;
    let mut sum = Real::ZERO;
    for k in 0..n {
        sum += p.sqr();
        let b_prev = if k == 0 { Real::ZERO } else { off[k - 1] };
        // off[k] = √C_{k+1} couples p̂_k and p̂_{k+1}; the last one closes p̂_n
        let bk = off[k];
        let p_next = ((x - diag[k]) * p - b_prev * p_prev) / bk;
        let dp_next = (p + (x - diag[k]) * dp - b_prev * dp_prev) / bk;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, sum)
}

/// n-point Gauss rule for a positive measure of total mass `mu0` whose
/// monic orthogonal polynomials satisfy p_{k+1} = (x - B_k) p_k - C_k p_{k-1}.
///
/// `diag[k] = B_k` and `c[k] = C_{k+1}` for k = 0..n (the last entry, C_n,
/// only enters the Newton refinement).
pub fn gauss_from_recurrence(diag: &[Real], c: &[Real], mu0: Real) -> Result<(Vec<Real>, Vec<Real>)> {
    let n = diag.len();
    assert!(n >= 1 && c.len() >= n, "need n diagonal entries and n off-diagonal coefficients");
    let off: Vec<Real> = c[..n].iter().map(|x| x.sqrt()).collect();
    let d64: Vec<f64> = diag.iter().map(|x| x.to_f64()).collect();
    let e64: Vec<f64> = off[..n - 1].iter().map(|x| x.to_f64()).collect();
    let approx = tridiag_eigenvalues(&d64, &e64)?;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &approx {
        let mut x = Real::new(x0);
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_eval(x, diag, &off, mu0);
            if dp.is_zero() {
                break;
            }
            let step = p / dp;
            x -= step;
            if step.abs().to_f64() <= 1e-33 * x.abs().to_f64().max(1e-300) {
                break;
            }
        }
        let (_, _, s) = orthonormal_eval(x, diag, &off, mu0);
        nodes.push(x);
        weights.push(s.recip());
    }
    Ok((nodes, weights))
}
