//! Skew orthogonal polynomials in the orthogonal-polynomial basis.
//!
//! The even and odd polynomials are
//!
//!   Q_{2m}   = (1/α_m) Σ_{k≤m} α_k p_{2k},
//!   Q_{2m+1} = (1/ξ_m) Σ_{k≤m} ξ_k (p_{2k+1} - ζ_k p_{2k-1}),
//!
//! where α and ξ solve two three-term recurrences built from the skew data
//! (ζ_j, h⁽¹⁾_j, h⁽⁴⁾_j). The recurrences start from α_{-1} = ξ_{-1} = 0 and
//! α_0 = ξ_0 = 1, and are run forward.

mod closed;
mod hyp;

pub use closed::{closed_form_alpha, closed_form_c, closed_form_xi};
pub use hyp::hyp_terminating;

use crate::classical::{monic_op_table, skew_data, zeta, SkewData, WeightFamily};
use crate::error::{Error, Result};
use crate::moments::{MomentEngine, DEFAULT_NODES};
use crate::numeric::{LogSigned, Real};
use crate::poly::{linear_combine, MonicPolynomial, Polynomial};
use crate::skewlinalg::SkewBasis;

/// Which construction produced a coefficient table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Recurrence,
    ClosedForm,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Recurrence => "recurrence",
            Source::ClosedForm => "closed_form",
        }
    }
}

/// α_j, ξ_j and c_j for j = 0..=jmax at one fugacity.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub x: Real,
    pub family: WeightFamily,
    pub alpha: Vec<Real>,
    pub xi: Vec<Real>,
    pub c: Vec<Real>,
    pub source: Source,
}

/// Skew data reaching h⁽⁴⁾_{2 jmax - 1}, which is all the forward
/// recurrences up to index jmax ever touch.
fn data_for(w: &WeightFamily, jmax: usize) -> Result<SkewData> {
    skew_data(w, jmax.saturating_sub(1))
}

/// The common middle coefficient X² h⁽¹⁾_j + h⁽⁴⁾_{2j} + ζ_j h⁽⁴⁾_{2j-1}.
fn middle(d: &SkewData, x2: Real, j: usize) -> Real {
    let j2 = 2 * j as isize;
    x2 * d.h1[j].to_real() + d.h4_at(j2) + d.zeta[j] * d.h4_at(j2 - 1)
}

/// α_0..α_jmax by forward recursion of
/// h⁽⁴⁾_{2j+1} α_{j+1} = M_j α_j - ζ_j h⁽⁴⁾_{2j-2} α_{j-1}.
pub fn recurrence_alpha(w: &WeightFamily, x: Real, jmax: usize) -> Result<Vec<Real>> {
    let d = data_for(w, jmax)?;
    let x2 = x.sqr();
    let mut a = vec![Real::ONE];
    let mut prev = Real::ZERO;
    for j in 0..jmax {
        let j2 = 2 * j as isize;
        let lead = d.h4_at(j2 + 1);
        assert!(!lead.is_zero(), "h4 vanished inside the validity range");
        let next = (middle(&d, x2, j) * a[j] - d.zeta[j] * d.h4_at(j2 - 2) * prev) / lead;
        prev = a[j];
        a.push(next);
    }
    Ok(a)
}

/// ξ_0..ξ_jmax by forward recursion of
/// ζ_{j+1} h⁽⁴⁾_{2j} ξ_{j+1} = M_j ξ_j - h⁽⁴⁾_{2j-1} ξ_{j-1}.
pub fn recurrence_xi(w: &WeightFamily, x: Real, jmax: usize) -> Result<Vec<Real>> {
    let d = data_for(w, jmax)?;
    let x2 = x.sqr();
    let mut v = vec![Real::ONE];
    let mut prev = Real::ZERO;
    for j in 0..jmax {
        let j2 = 2 * j as isize;
        let lead = zeta(w, j + 1) * d.h4_at(j2);
        assert!(!lead.is_zero(), "zeta_{} h4_{} vanished inside the validity range", j + 1, j2);
        let next = (middle(&d, x2, j) * v[j] - d.h4_at(j2 - 1) * prev) / lead;
        prev = v[j];
        v.push(next);
    }
    Ok(v)
}

/// c_0..c_jmax with c_j = ∏_{k=1}^{j} ζ_k h⁽⁴⁾_{2k-2} / h⁽⁴⁾_{2k-1}.
pub fn c_factor_table(w: &WeightFamily, jmax: usize) -> Result<Vec<Real>> {
    let d = data_for(w, jmax)?;
    let mut acc = LogSigned::ONE;
    let mut out = vec![Real::ONE];
    for k in 1..=jmax {
        acc = acc * LogSigned::from_real(zeta(w, k)) * d.h4[2 * k - 2] / d.h4[2 * k - 1];
        out.push(acc.to_real());
    }
    Ok(out)
}

pub fn c_factor(w: &WeightFamily, j: usize) -> Result<Real> {
    Ok(c_factor_table(w, j)?[j])
}

/// Coefficient table through index jmax from either construction.
pub fn coefficient_table(w: &WeightFamily, x: Real, jmax: usize, source: Source) -> Result<CoefficientTable> {
    let (alpha, xi, c) = match source {
        Source::Recurrence => (recurrence_alpha(w, x, jmax)?, recurrence_xi(w, x, jmax)?, c_factor_table(w, jmax)?),
        Source::ClosedForm => {
            let mut al = Vec::with_capacity(jmax + 1);
            let mut xs = Vec::with_capacity(jmax + 1);
            let mut cs = Vec::with_capacity(jmax + 1);
            for j in 0..=jmax {
                al.push(closed_form_alpha(w, x, j)?);
                xs.push(closed_form_xi(w, x, j)?);
                cs.push(closed_form_c(w, j));
            }
            (al, xs, cs)
        }
    };
    Ok(CoefficientTable { x, family: *w, alpha, xi, c, source })
}

/// Q_0..Q_{2N-1} with their skew norms u_n = ⟨Q_{2n}, Q_{2n+1}⟩.
#[derive(Clone, Debug)]
pub struct SopFamily {
    pub family: WeightFamily,
    pub x: Real,
    pub q: Vec<MonicPolynomial>,
    pub u: Vec<Real>,
}

impl SopFamily {
    /// Wraps a moment-route basis with its family and fugacity.
    pub fn from_basis(w: &WeightFamily, x: Real, basis: SkewBasis) -> SopFamily {
        SopFamily { family: *w, x, q: basis.q, u: basis.u }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    /// Largest coefficient difference to another family of the same size.
    pub fn max_coeff_diff(&self, other: &SopFamily) -> Real {
        self.q
            .iter()
            .zip(&other.q)
            .map(|(a, b)| (a.as_poly() - b.as_poly()).max_abs_coeff())
            .fold(Real::ZERO, Real::max)
    }

    /// Adds multiples of Q_{2m} to each Q_{2m+1} so that its z^{2m}
    /// coefficient matches `reference`, removing the one-parameter freedom
    /// of the odd polynomials.
    pub fn align_odd_gauge(&mut self, reference: &SopFamily) {
        for m in 0..self.n().min(reference.n()) {
            let k = 2 * m;
            let delta = reference.q[k + 1].coeff(k) - self.q[k + 1].coeff(k);
            let p = linear_combine(&[(Real::ONE, self.q[k + 1].as_poly()), (delta, self.q[k].as_poly())]);
            self.q[k + 1] = MonicPolynomial::normalized(p.coeffs().to_vec());
        }
    }

    /// Matrix of ⟨Q_i, Q_j⟩ in the combined skew product at this family's X.
    pub fn skew_gram(&self, engine: &MomentEngine) -> Result<Vec<Vec<Real>>> {
        let n = self.q.len();
        let mut g = vec![vec![Real::ZERO; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = engine.skew_inner(self.x, self.q[i].as_poly(), self.q[j].as_poly())?;
                g[i][j] = v;
                g[j][i] = -v;
            }
        }
        Ok(g)
    }
}

/// Sanity test applied to each α_m, ξ_m before it is used as a divisor.
fn check_coefficient(name: &'static str, j: usize, x: Real, v: Real, scale: Real) -> Result<()> {
    if !(v.abs() > scale * Real::new(1e-25)) || !(v > Real::ZERO) {
        return Err(Error::Vanishing { name, j, x: x.to_sci_string(17) });
    }
    Ok(())
}

/// Q_0..Q_{2N-1} from the recurrence coefficients, with u_n evaluated by
/// the moment engine.
pub fn build_q(w: &WeightFamily, x: Real, n: usize) -> Result<SopFamily> {
    build_q_with_nodes(w, x, n, DEFAULT_NODES)
}

pub fn build_q_with_nodes(w: &WeightFamily, x: Real, n: usize, n_nodes: usize) -> Result<SopFamily> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    w.check_size(n)?;
    let jmax = n - 1;
    let alpha = recurrence_alpha(w, x, jmax)?;
    let xi = recurrence_xi(w, x, jmax)?;
    let ps = monic_op_table(w, 2 * n - 1)?;
    let zeta: Vec<Real> = (0..n).map(|j| zeta(w, j)).collect();
    let zero = Polynomial::zero();
    let odd_basis: Vec<Polynomial> = (0..n)
        .map(|k| {
            let lower = if k == 0 { &zero } else { ps[2 * k - 1].as_poly() };
            linear_combine(&[(Real::ONE, ps[2 * k + 1].as_poly()), (-zeta[k], lower)])
        })
        .collect();
    let mut q = Vec::with_capacity(2 * n);
    let mut amax = Real::ONE;
    let mut xmax = Real::ONE;
    for m in 0..n {
        amax = amax.max(alpha[m].abs());
        xmax = xmax.max(xi[m].abs());
        check_coefficient("alpha", m, x, alpha[m], amax)?;
        check_coefficient("xi", m, x, xi[m], xmax)?;
        let even_terms: Vec<(Real, &Polynomial)> =
            (0..=m).map(|k| (alpha[k] / alpha[m], ps[2 * k].as_poly())).collect();
        let odd_terms: Vec<(Real, &Polynomial)> = (0..=m).map(|k| (xi[k] / xi[m], &odd_basis[k])).collect();
        q.push(MonicPolynomial::normalized(linear_combine(&even_terms).coeffs().to_vec()));
        q.push(MonicPolynomial::normalized(linear_combine(&odd_terms).coeffs().to_vec()));
    }
    let engine = MomentEngine::new(w, 2 * n, n_nodes)?;
    let mut u = Vec::with_capacity(n);
    for m in 0..n {
        u.push(engine.skew_inner(x, q[2 * m].as_poly(), q[2 * m + 1].as_poly())?);
    }
    Ok(SopFamily { family: *w, x, q, u })
}
