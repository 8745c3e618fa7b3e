//! The β=1 monomial table K_ij = ⟨z^i, z^j⟩_{1,V₁}.
//!
//! The sgn kernel is removed by the cumulative-integral identity
//!
//!   K_ij = ½ ∫ z^j w1(z) (Φ_i(z) - (T_i - Φ_i(z))) dz,   Φ_i(z) = ∫_{y<z} y^i w1(y) dy,
//!
//! and the outer integral is done by double-exponential quadrature in a
//! per-family chart t. The outer range is split at a point c; left of c the
//! cumulative integral runs from the lower end, right of c its complement
//! runs to the upper end, so both stay small where they matter.
//!
//! The error estimate combines the change between steps h and h/2 with the
//! defect K_ij + K_ji, which vanishes analytically.

use super::chart::Chart;
use super::de::{DeNode, Segment};
use super::gauss::gauss_from_recurrence;
use crate::classical::WeightFamily;
use crate::error::{Error, Result};
use crate::numeric::Real;
use std::sync::OnceLock;

/// Gauss–Legendre points per panel between DE grid points.
const PANEL_ORDER: usize = 10;

/// Log magnitude below which a node's contribution is discarded.
const LOG_NEGLIGIBLE: f64 = -720.0;

/// Gauss–Legendre rule on [-1, 1] for the panels between grid points.
fn panel_rule() -> &'static (Vec<Real>, Vec<Real>) {
    static RULE: OnceLock<(Vec<Real>, Vec<Real>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = PANEL_ORDER;
        let c: Vec<Real> = (1..=n)
            .map(|k| {
                let k2 = Real::from_usize(k * k);
                k2 / (k2 * Real::new(4.0) - Real::ONE)
            })
            .collect();
        gauss_from_recurrence(&vec![Real::ZERO; n], &c, Real::TWO).expect("Legendre rule")
    })
}

/// Powers z^0..z^{d-1} times w1 and the quadrature weight, or None when negligible.
fn weighted_powers(chart: &Chart, n: &DeNode, weight: Real, d: usize) -> Option<Vec<Real>> {
    let (z, lm) = chart.eval(n);
    if !lm.is_finite() || !(weight > Real::ZERO) {
        return None;
    }
    let grow = if d > 1 { Real::from_usize(d - 1) * z.abs().max(Real::ONE).ln() } else { Real::ZERO };
    if (lm + grow + weight.ln()).to_f64() < LOG_NEGLIGIBLE {
        return None;
    }
    let mut v = Vec::with_capacity(d);
    let mut acc = lm.exp() * weight;
    for _ in 0..d {
        v.push(acc);
        acc *= z;
    }
    Some(v)
}

/// ∫ of z^i w1 over the s-interval between s0 and s1 (either order).
fn panel(chart: &Chart, seg: &Segment, s0: Real, s1: Real, d: usize, out: &mut [Real]) {
    let (x, w) = panel_rule();
    let mid = (s0 + s1).ldexp(-1);
    let half = (s1 - s0).abs().ldexp(-1);
    for (&xg, &wg) in x.iter().zip(w) {
        let n = seg.node(mid + half * xg);
        if let Some(v) = weighted_powers(chart, &n, half * wg * n.jac, d) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x;
            }
        }
    }
}

/// Raw (unsymmetrised) table at one DE step, plus Σ|z|^i w1 for scaling.
///
/// The outer integral is the DE trapezoid sum. The cumulative integral is
/// accumulated from the segment's support end by Gauss–Legendre panels
/// between consecutive grid points, in the DE variable.
fn raw_table(chart: &Chart, h: Real, d: usize) -> (Vec<Real>, Vec<Real>) {
    let grid = Segment::grid(h);
    // per segment: outer values and cumulative integrals at each grid point
    let mut parts: Vec<(Vec<Option<Vec<Real>>>, Vec<Vec<Real>>, bool)> = Vec::new();
    for (left, (seg, anchor_low)) in chart.segments().into_iter().enumerate().map(|(i, x)| (i == 0, x)) {
        let outer: Vec<Option<Vec<Real>>> = grid
            .iter()
            .map(|&s| {
                let n = seg.node(s);
                weighted_powers(chart, &n, h * n.jac, d)
            })
            .collect();
        let m = grid.len();
        let order: Vec<usize> = if anchor_low { (0..m).collect() } else { (0..m).rev().collect() };
        let mut cum = vec![vec![Real::ZERO; d]; m];
        let mut acc = vec![Real::ZERO; d];
        for w in order.windows(2) {
            panel(chart, &seg, grid[w[0]], grid[w[1]], d, &mut acc);
            cum[w[1]].clone_from(&acc);
        }
        parts.push((outer, cum, left));
    }
    let mut total = vec![Real::ZERO; d];
    let mut abs_mom = vec![Real::ZERO; d];
    for (outer, _, _) in &parts {
        for zp in outer.iter().flatten() {
            for i in 0..d {
                total[i] += zp[i];
                abs_mom[i] += zp[i].abs();
            }
        }
    }
    let mut k = vec![Real::ZERO; d * d];
    for (outer, cum, left) in &parts {
        for (zp, cu) in outer.iter().zip(cum) {
            let Some(zp) = zp else { continue };
            for i in 0..d {
                // left: 2Φ_L - T;  right: T - 2Φ_R
                let g = if *left { cu[i] * Real::TWO - total[i] } else { total[i] - cu[i] * Real::TWO };
                for j in 0..d {
                    k[i * d + j] += zp[j] * g;
                }
            }
        }
    }
    for v in k.iter_mut() {
        *v = v.ldexp(-1);
    }
    (k, abs_mom)
}

/// Antisymmetric monomial table with its error estimate.
#[derive(Clone, Debug)]
pub struct Beta1Table {
    dim: usize,
    k: Vec<Real>,
    /// Per-entry absolute error estimate.
    err: Vec<Real>,
    /// Per-entry natural scale ½ A_i A_j with A_i = ∫|z|^i w1.
    scale: Vec<Real>,
    h: Real,
}

impl Beta1Table {
    /// Builds the table for degrees 0..dim with DE step h (compared against h/2).
    pub fn build(w: &WeightFamily, dim: usize, h: Real) -> Result<Beta1Table> {
        let chart = Chart::new(w);
        let fine_h = h.ldexp(-1);
        let (coarse, _) = raw_table(&chart, h, dim);
        let (fine, abs_mom) = raw_table(&chart, fine_h, dim);
        let mut k = vec![Real::ZERO; dim * dim];
        let mut err = vec![Real::ZERO; dim * dim];
        let mut scale = vec![Real::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let a = i * dim + j;
                let b = j * dim + i;
                k[a] = (fine[a] - fine[b]).ldexp(-1);
                let ck = (coarse[a] - coarse[b]).ldexp(-1);
                err[a] = (k[a] - ck).abs() + (fine[a] + fine[b]).abs();
                scale[a] = (abs_mom[i] * abs_mom[j]).ldexp(-1);
            }
        }
        let t = Beta1Table { dim, k, err, scale, h: fine_h };
        let worst = t.max_relative_error();
        if !(worst <= 1e-10) {
            return Err(Error::Quadrature { what: format!("beta=1 moment table for {w}"), estimate: worst });
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The finer DE step the entries were computed with.
    pub fn step(&self) -> Real {
        self.h
    }

    pub fn get(&self, i: usize, j: usize) -> Real {
        self.k[i * self.dim + j]
    }

    pub fn max_relative_error(&self) -> f64 {
        self.err
            .iter()
            .zip(&self.scale)
            .map(|(e, s)| if s.is_zero() { 0.0 } else { (*e / *s).to_f64() })
            .fold(0.0, f64::max)
    }

    /// Σ φ_i ψ_j K_ij, with the error estimate relative to Σ|φ_i||ψ_j| scale_ij.
    pub fn bilinear(&self, phi: &[Real], psi: &[Real]) -> (Real, f64) {
        assert!(phi.len() <= self.dim && psi.len() <= self.dim, "table too small for the polynomials");
        let mut v = Real::ZERO;
        let mut e = Real::ZERO;
        let mut s = Real::ZERO;
        for (i, &a) in phi.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in psi.iter().enumerate() {
                let idx = i * self.dim + j;
                v += a * b * self.k[idx];
                let ab = (a * b).abs();
                e += ab * self.err[idx];
                s += ab * self.scale[idx];
            }
        }
        let rel = if s.is_zero() { 0.0 } else { (e / s).to_f64() };
        (v, rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_one_z_is_sqrt_pi() {
        let t = Beta1Table::build(&WeightFamily::gaussian(), 3, Real::new(1.0 / 16.0)).unwrap();
        let sp = Real::PI.sqrt();
        assert!(((t.get(0, 1) - sp) / sp).abs().to_f64() < 1e-20, "{:?}", t.get(0, 1));
        assert!((t.get(1, 0) + t.get(0, 1)).is_zero());
        assert!(t.get(0, 2).abs().to_f64() < 1e-25);
        assert!(t.max_relative_error() < 1e-12);
    }
}
