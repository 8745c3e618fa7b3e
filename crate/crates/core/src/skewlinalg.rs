//! Pfaffians and the skew decomposition S M Sᵀ = J(u).
//!
//! Values come from pivoted Parlett–Reid elimination. The triangular factor
//! comes from an unpivoted skew Gram–Schmidt pass, because only that keeps
//! the rows of S monic in the monomial basis.

use crate::error::{Error, Result};
use crate::moments::SkewMatrix;
use crate::numeric::{LogSigned, Real};
use crate::poly::MonicPolynomial;

/// Breakdown threshold for the Gram–Schmidt pivots, relative to ‖M‖_max.
pub const BREAKDOWN_TOL: f64 = 1e-25;

/// Pf(A) by Parlett–Reid elimination with largest-magnitude pivoting.
/// Odd dimension and singular input give an exact zero.
pub fn pfaffian(a: &SkewMatrix) -> LogSigned {
    let n = a.dim();
    if n % 2 == 1 {
        return LogSigned::ZERO;
    }
    let mut m: Vec<Vec<Real>> = a.rows();
    let mut acc = LogSigned::ONE;
    for k in (0..n).step_by(2) {
        let mut p = k + 1;
        for i in k + 2..n {
            if m[k][i].abs() > m[k][p].abs() {
                p = i;
            }
        }
        if p != k + 1 {
            m.swap(k + 1, p);
            for row in m.iter_mut() {
                row.swap(k + 1, p);
            }
            acc = -acc;
        }
        let piv = m[k][k + 1];
        if piv.is_zero() {
            return LogSigned::ZERO;
        }
        acc = acc * LogSigned::from_real(piv);
        // D ← D - (r0 ⊗ r1 - r1 ⊗ r0)/piv, r0 = row k, r1 = row k+1
        for i in k + 2..n {
            let ai = m[k][i] / piv;
            let bi = m[k + 1][i] / piv;
            for j in i + 1..n {
                let v = m[i][j] - (ai * m[k + 1][j] - bi * m[k][j]);
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
    }
    acc
}

/// det(A) of a square row-major matrix by LU with partial pivoting.
pub fn determinant(a: &[Vec<Real>]) -> LogSigned {
    let n = a.len();
    let mut m = a.to_vec();
    let mut acc = LogSigned::ONE;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap()).unwrap();
        if m[p][k].is_zero() {
            return LogSigned::ZERO;
        }
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        let piv = m[k][k];
        acc = acc * LogSigned::from_real(piv);
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
        }
    }
    acc
}

/// Unit lower-triangular S and the block values u with S M Sᵀ = ⊕ [[0, u_n], [-u_n, 0]].
#[derive(Clone, Debug)]
pub struct SkewDecomposition {
    /// Row-major, dim x dim, S[i][i] = 1, S[i][j] = 0 for j > i.
    pub s: Vec<Vec<Real>>,
    pub u: Vec<Real>,
}

impl SkewDecomposition {
    pub fn dim(&self) -> usize {
        self.s.len()
    }

    /// S M Sᵀ.
    pub fn congruence(&self, m: &SkewMatrix) -> Vec<Vec<Real>> {
        let n = self.dim();
        let mut sm = vec![vec![Real::ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                sm[i][j] = (0..=i).map(|k| self.s[i][k] * m.get(k, j)).sum();
            }
        }
        let mut out = vec![vec![Real::ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = (0..=j).map(|k| sm[i][k] * self.s[j][k]).sum();
            }
        }
        out
    }

    /// max |S M Sᵀ - J(u)| over all entries.
    pub fn reconstruction_error(&self, m: &SkewMatrix) -> Real {
        let c = self.congruence(m);
        let mut worst = Real::ZERO;
        for (i, row) in c.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let target = if i % 2 == 0 && j == i + 1 {
                    self.u[i / 2]
                } else if j % 2 == 0 && i == j + 1 {
                    -self.u[j / 2]
                } else {
                    Real::ZERO
                };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}

fn form(m: &SkewMatrix, a: &[Real], b: &[Real]) -> Real {
    let n = m.dim();
    let mut s = Real::ZERO;
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        let mut row = Real::ZERO;
        for j in 0..n {
            if !b[j].is_zero() {
                row += m.get(i, j) * b[j];
            }
        }
        s += a[i] * row;
    }
    s
}

/// Skew Gram–Schmidt of the standard basis against ⟨a, b⟩ = aᵀ M b.
pub fn skew_tridiagonalize(m: &SkewMatrix) -> Result<SkewDecomposition> {
    let n = m.dim();
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("skew decomposition needs even dimension, got {n}")));
    }
    let tol = m.max_abs() * Real::new(BREAKDOWN_TOL);
    let mut s: Vec<Vec<Real>> = Vec::with_capacity(n);
    let mut u: Vec<Real> = Vec::with_capacity(n / 2);
    let project = |v: &mut Vec<Real>, s: &[Vec<Real>], u: &[Real]| {
        for (k, &uk) in u.iter().enumerate() {
            let (qe, qo) = (&s[2 * k], &s[2 * k + 1]);
            let ce = form(m, v, qo) / uk;
            let co = form(m, v, qe) / uk;
            for i in 0..n {
                v[i] = v[i] - ce * qe[i] + co * qo[i];
            }
        }
    };
    for b in 0..n / 2 {
        let mut even = vec![Real::ZERO; n];
        even[2 * b] = Real::ONE;
        project(&mut even, &s, &u);
        let mut odd = vec![Real::ZERO; n];
        odd[2 * b + 1] = Real::ONE;
        project(&mut odd, &s, &u);
        let ub = form(m, &even, &odd);
        if !(ub.abs() > tol) {
            return Err(Error::Breakdown { n: b });
        }
        s.push(even);
        s.push(odd);
        u.push(ub);
    }
    Ok(SkewDecomposition { s, u })
}

/// Monic Q_n from the rows of S, with the block values u_n.
#[derive(Clone, Debug)]
pub struct SkewBasis {
    pub q: Vec<MonicPolynomial>,
    pub u: Vec<Real>,
}

pub fn extract_sop(m: &SkewMatrix) -> Result<SkewBasis> {
    let d = skew_tridiagonalize(m)?;
    let q = d
        .s
        .iter()
        .enumerate()
        .map(|(i, row)| MonicPolynomial::normalized(row[..=i].to_vec()))
        .collect();
    Ok(SkewBasis { q, u: d.u })
}
