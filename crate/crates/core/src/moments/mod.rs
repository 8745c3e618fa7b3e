//! Inner products ⟨·,·⟩₁, ⟨·,·⟩₂, ⟨·,·⟩₄ and the skew moment matrix
//! m_ij(X) = X²⟨z^i, z^j⟩₁ + ⟨z^i, z^j⟩₄.
//!
//! The β=2 and β=4 forms are polynomial integrals against w2 (β=4 carries an
//! extra factor f) and are done by a Gauss rule. The β=1 form goes through a
//! cached table of monomial values, see [`Beta1Table`].

mod beta1;
mod chart;
mod de;
mod gauss;

pub use beta1::Beta1Table;
pub use gauss::gauss_from_recurrence;

use crate::classical::{norm_h, pearson_pair, recurrence_coeffs, FamilyKind, WeightFamily};
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::poly::Polynomial;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Default outer rule size.
pub const DEFAULT_NODES: usize = 64;

/// A Gauss-type rule for ∫ F(z) w2(z) dz.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
    pub family: WeightFamily,
    pub node_count: usize,
    f_values: Vec<Real>,
}

/// Builds the w2 rule with `n_nodes` points.
///
/// Gaussian, Laguerre and Jacobi use their own recurrences. The Cauchy
/// family is mapped by z = tan(θ/2) onto (-π, π), where
/// w2 dz = ½ cos^{2p-2}(θ/2) e^{qθ} dθ, and integrated by Gauss–Legendre.
pub fn quadrature_rule(w: &WeightFamily, n_nodes: usize) -> Result<QuadratureRule> {
    if n_nodes == 0 {
        return Err(Error::InvalidParameter("quadrature rule needs at least one node".into()));
    }
    let (nodes, weights) = match w.kind() {
        FamilyKind::GenCauchy { p, q } => {
            let diag = vec![Real::ZERO; n_nodes];
            let c: Vec<Real> = (1..=n_nodes)
                .map(|k| {
                    let k2 = Real::from_usize(k * k);
                    k2 / (k2 * Real::new(4.0) - Real::ONE)
                })
                .collect();
            let (x, wl) = gauss_from_recurrence(&diag, &c, Real::TWO)?;
            let mut nodes = Vec::with_capacity(n_nodes);
            let mut weights = Vec::with_capacity(n_nodes);
            for (xi, wi) in x.into_iter().zip(wl) {
                // half angle φ = θ/2 = πx/2 ∈ (-π/2, π/2)
                let phi = Real::FRAC_PI_2 * xi;
                let (s, c) = phi.sin_cos();
                nodes.push(s / c);
                let lw = (Real::TWO * p - Real::TWO) * c.ln() + q * Real::TWO * phi;
                weights.push(Real::FRAC_PI_2 * wi * lw.exp());
            }
            (nodes, weights)
        }
        _ => {
            let mut diag = Vec::with_capacity(n_nodes);
            let mut c = Vec::with_capacity(n_nodes);
            for k in 0..n_nodes {
                diag.push(recurrence_coeffs(w, k)?.0);
                c.push(recurrence_coeffs(w, k + 1)?.1);
            }
            gauss_from_recurrence(&diag, &c, norm_h(w, 0)?.to_real())?
        }
    };
    let f = pearson_pair(w).f;
    let f_values = nodes.iter().map(|&z| f.eval(z)).collect();
    Ok(QuadratureRule { nodes, weights, family: *w, node_count: n_nodes, f_values })
}

impl QuadratureRule {
    /// Σ W_k F(z_k).
    pub fn integrate(&self, f: impl Fn(Real) -> Real) -> Real {
        self.nodes.iter().zip(&self.weights).map(|(&z, &w)| w * f(z)).sum()
    }

    /// ∫ φ ψ w2.
    pub fn inner2(&self, phi: &Polynomial, psi: &Polynomial) -> Real {
        self.integrate(|z| phi.eval(z) * psi.eval(z))
    }

    /// ½ ∫ (φ ψ' - φ' ψ) w4, with w4 = f w2.
    pub fn inner4(&self, phi: &Polynomial, psi: &Polynomial) -> Real {
        let dphi = phi.derivative();
        let dpsi = psi.derivative();
        let s: Real = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.f_values)
            .map(|((&z, &w), &f)| w * f * (phi.eval(z) * dpsi.eval(z) - dphi.eval(z) * psi.eval(z)))
            .sum();
        s.ldexp(-1)
    }

    /// Nodes with the weights of ∫ F w4, that is W_k f(z_k).
    pub fn w4_points(&self) -> Vec<(Real, Real)> {
        self.nodes.iter().zip(&self.weights).zip(&self.f_values).map(|((&z, &w), &f)| (z, w * f)).collect()
    }

    /// ∫ z^k f w2 for k = 0..count.
    pub fn f_moments(&self, count: usize) -> Vec<Real> {
        let mut out = vec![Real::ZERO; count];
        for ((&z, &w), &f) in self.nodes.iter().zip(&self.weights).zip(&self.f_values) {
            let mut acc = w * f;
            for m in out.iter_mut() {
                *m += acc;
                acc *= z;
            }
        }
        out
    }
}

/// Dense skew-symmetric matrix, filled from its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix {
    dim: usize,
    data: Vec<Real>,
}

impl SkewMatrix {
    pub fn zeros(dim: usize) -> SkewMatrix {
        SkewMatrix { dim, data: vec![Real::ZERO; dim * dim] }
    }

    /// Builds the matrix from entry(i, j) evaluated for i < j only.
    pub fn from_upper(dim: usize, mut entry: impl FnMut(usize, usize) -> Real) -> SkewMatrix {
        let mut m = SkewMatrix::zeros(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                m.set(i, j, entry(i, j));
            }
        }
        m
    }

    /// Skew part (A - Aᵀ)/2 of a square row-major array.
    pub fn from_dense_skew_part(dim: usize, a: &[Real]) -> SkewMatrix {
        assert_eq!(a.len(), dim * dim);
        SkewMatrix::from_upper(dim, |i, j| (a[i * dim + j] - a[j * dim + i]).ldexp(-1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Real {
        self.data[i * self.dim + j]
    }

    /// Sets (i, j) to v and (j, i) to -v; i != j.
    pub fn set(&mut self, i: usize, j: usize, v: Real) {
        assert_ne!(i, j, "diagonal of a skew matrix is fixed at zero");
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = -v;
    }

    pub fn max_abs(&self) -> Real {
        self.data.iter().fold(Real::ZERO, |m, v| m.max(v.abs()))
    }

    /// Leading k x k block.
    pub fn leading(&self, k: usize) -> SkewMatrix {
        assert!(k <= self.dim);
        SkewMatrix::from_upper(k, |i, j| self.get(i, j))
    }

    /// Row-major strict upper triangle.
    pub fn upper_triangle(&self) -> Vec<Real> {
        let mut out = Vec::with_capacity(self.dim * self.dim.saturating_sub(1) / 2);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<Real>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[Real] {
        &self.data
    }
}

/// DE step used for a given outer node budget (halved once more for the
/// error estimate inside [`Beta1Table::build`]).
fn de_step(n_nodes: usize) -> Real {
    Real::TWO / Real::from_usize(n_nodes.max(8))
}

fn table_cache() -> &'static Mutex<HashMap<String, Arc<Beta1Table>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Beta1Table>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared β=1 table for degrees below `dim`, built once per process.
pub fn beta1_table(w: &WeightFamily, dim: usize, n_nodes: usize) -> Result<Arc<Beta1Table>> {
    // the table size only affects cost; round up so nearby requests share it
    let mut rounded = dim.max(1).div_ceil(4) * 4;
    if let FamilyKind::GenCauchy { p, .. } = w.kind() {
        // ∫ |z|^{d-1} w1 converges for d - 1 < p
        while rounded > dim.max(1) && !(Real::from_usize(rounded - 1) < p) {
            rounded -= 1;
        }
    }
    build_cached(w, rounded, n_nodes)
}

fn build_cached(w: &WeightFamily, dim: usize, n_nodes: usize) -> Result<Arc<Beta1Table>> {
    let key = format!("{:?}|{dim}|{n_nodes}", w.kind());
    if let Some(t) = table_cache().lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(Beta1Table::build(w, dim, de_step(n_nodes))?);
    table_cache().lock().unwrap().insert(key, t.clone());
    Ok(t)
}

fn padded(p: &Polynomial) -> Vec<Real> {
    if p.is_zero() {
        vec![]
    } else {
        p.coeffs().to_vec()
    }
}

/// Evaluates the three inner products and the moment matrix for one family
/// with a fixed rule and β=1 table.
#[derive(Clone, Debug)]
pub struct MomentEngine {
    family: WeightFamily,
    rule: QuadratureRule,
    table: Arc<Beta1Table>,
}

impl MomentEngine {
    /// Engine for polynomials of degree below `dim`.
    pub fn new(w: &WeightFamily, dim: usize, n_nodes: usize) -> Result<MomentEngine> {
        if let FamilyKind::GenCauchy { p, .. } = w.kind() {
            if dim >= 1 && !(Real::from_usize(dim - 1) < p) {
                return Err(Error::InvalidParameter(format!(
                    "beta=1 moments of degree {} diverge for {w}",
                    dim - 1
                )));
            }
        }
        let rule = quadrature_rule(w, n_nodes)?;
        let table = beta1_table(w, dim, n_nodes)?;
        Ok(MomentEngine { family: *w, rule, table })
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn table(&self) -> &Beta1Table {
        &self.table
    }

    pub fn inner2(&self, phi: &Polynomial, psi: &Polynomial) -> Real {
        self.rule.inner2(phi, psi)
    }

    pub fn inner4(&self, phi: &Polynomial, psi: &Polynomial) -> Real {
        self.rule.inner4(phi, psi)
    }

    /// ⟨φ, ψ⟩₁ together with its relative error estimate.
    pub fn inner1_with_error(&self, phi: &Polynomial, psi: &Polynomial) -> Result<(Real, f64)> {
        let (a, b) = (padded(phi), padded(psi));
        if a.len() > self.table.dim() || b.len() > self.table.dim() {
            return Err(Error::InvalidParameter(format!(
                "polynomial degree exceeds the beta=1 table size {}",
                self.table.dim()
            )));
        }
        let (v, e) = self.table.bilinear(&a, &b);
        if e > 1e-10 {
            return Err(Error::Quadrature { what: "beta=1 inner product".into(), estimate: e });
        }
        Ok((v, e))
    }

    pub fn inner1(&self, phi: &Polynomial, psi: &Polynomial) -> Result<Real> {
        Ok(self.inner1_with_error(phi, psi)?.0)
    }

    /// X² ⟨φ, ψ⟩₁ + ⟨φ, ψ⟩₄.
    pub fn skew_inner(&self, x: Real, phi: &Polynomial, psi: &Polynomial) -> Result<Real> {
        Ok(x.sqr() * self.inner1(phi, psi)? + self.inner4(phi, psi))
    }

    /// The 2N x 2N moment matrix at fugacity X.
    pub fn moment_matrix(&self, x: Real, n: usize) -> Result<SkewMatrix> {
        let dim = 2 * n;
        if dim > self.table.dim() {
            return Err(Error::InvalidParameter(format!(
                "engine supports at most {} moments per side",
                self.table.dim()
            )));
        }
        let mu = self.rule.f_moments(2 * dim);
        let x2 = x.sqr();
        Ok(SkewMatrix::from_upper(dim, |i, j| {
            // ⟨z^i, z^j⟩₄ = ½ (j - i) ∫ z^{i+j-1} w4
            let b4 = Real::from_i64(j as i64 - i as i64) * mu[i + j - 1] * Real::HALF;
            x2 * self.table.get(i, j) + b4
        }))
    }
}

/// Rule size needed for exact integration of degree `deg` polynomials.
fn nodes_for(deg: usize) -> usize {
    DEFAULT_NODES.max(deg / 2 + 2)
}

/// ∫ φ ψ w2 with an automatically sized rule.
pub fn inner2(phi: &Polynomial, psi: &Polynomial, w: &WeightFamily) -> Result<Real> {
    let deg = phi.degree().unwrap_or(0) + psi.degree().unwrap_or(0);
    Ok(quadrature_rule(w, nodes_for(deg))?.inner2(phi, psi))
}

/// ½ ∫ (φ ψ' - φ' ψ) w4 with an automatically sized rule.
pub fn inner4(phi: &Polynomial, psi: &Polynomial, w: &WeightFamily) -> Result<Real> {
    let deg = phi.degree().unwrap_or(0) + psi.degree().unwrap_or(0) + 2;
    Ok(quadrature_rule(w, nodes_for(deg))?.inner4(phi, psi))
}

/// ½ ∫∫ φ(y) ψ(z) sgn(z - y) w1(y) w1(z) dy dz.
pub fn inner1(phi: &Polynomial, psi: &Polynomial, w: &WeightFamily) -> Result<Real> {
    let d = phi.degree().unwrap_or(0).max(psi.degree().unwrap_or(0)) + 1;
    MomentEngine::new(w, d, DEFAULT_NODES)?.inner1(phi, psi)
}

/// m_ij(X) for i, j < 2N with the default node budget.
pub fn moment_matrix(w: &WeightFamily, x: Real, n: usize) -> Result<SkewMatrix> {
    moment_matrix_with_nodes(w, x, n, DEFAULT_NODES)
}

pub fn moment_matrix_with_nodes(w: &WeightFamily, x: Real, n: usize, n_nodes: usize) -> Result<SkewMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    w.check_size(n)?;
    MomentEngine::new(w, 2 * n, n_nodes)?.moment_matrix(x, n)
}
