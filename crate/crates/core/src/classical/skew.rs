//! Closed-form skew data (ζ_j, h⁽¹⁾_j, h⁽⁴⁾_j), the structure relation
//! f p_n' = a_n p_{n+1} + b_n p_n + c_n p_{n-1}, and the first-order operator
//! 𝒜 = f∂ + (f' - g)/2 that produces the β=1 skew orthogonal polynomials.

use super::opoly::check_real;
use super::{monic_op_table, norm_h, pearson_pair, FamilyKind, WeightFamily};
use crate::error::{Error, Result};
use crate::moments::quadrature_rule;
use crate::numeric::{log_gamma_complex, log_gamma_real, Complex, LogSigned, Real};
use crate::poly::{linear_combine, MonicPolynomial, Polynomial};

/// ζ_j and h⁽¹⁾_j for j = 0..=jmax, and h⁽⁴⁾_k for k = 0..=2 jmax + 1
/// (the recurrences for α_j reach h⁽⁴⁾_{2j+1}).
#[derive(Clone, Debug)]
pub struct SkewData {
    pub zeta: Vec<Real>,
    pub h1: Vec<LogSigned>,
    pub h4: Vec<LogSigned>,
}

impl SkewData {
    /// h⁽⁴⁾_k with the convention h⁽⁴⁾_{-1} = 0.
    pub fn h4_at(&self, k: isize) -> Real {
        if k < 0 {
            Real::ZERO
        } else {
            self.h4[k as usize].to_real()
        }
    }

    pub fn jmax(&self) -> usize {
        self.zeta.len() - 1
    }
}

fn lg(x: Real) -> Result<Real> {
    log_gamma_real(x)
}

/// ln Γ(x) - ln Γ(y), exactly zero when x == y (covers the j = 0 cases
/// where both arguments can sit on a pole).
fn lg_ratio(x: Real, y: Real) -> Result<Real> {
    if x == y {
        Ok(Real::ZERO)
    } else {
        Ok(lg(x)? - lg(y)?)
    }
}

fn cauchy_gamma_pair(re: Real, q: Real) -> Result<Real> {
    let s = log_gamma_complex(Complex::new(re, q))? + log_gamma_complex(Complex::new(re, -q))?;
    check_real(s, "Cauchy skew data")?;
    Ok(s.re)
}

/// ζ_j on its own; it needs no norms and hence no Cauchy guard.
pub fn zeta(w: &WeightFamily, j: usize) -> Real {
    let x = Real::from_usize(j);
    let two = Real::TWO;
    let one = Real::ONE;
    match w.kind() {
        FamilyKind::Gaussian => x,
        FamilyKind::Laguerre { a } => two * x * (two * x + a),
        FamilyKind::Jacobi { a, b } => {
            if j == 0 {
                return Real::ZERO;
            }
            let ab = a + b;
            let t = Real::new(4.0) * x + ab;
            Real::new(8.0) * x * (two * x + a) * (two * x + b) * (two * x + ab)
                / ((t - one) * t * (t + one) * (t + two))
        }
        FamilyKind::GenCauchy { p, q } => {
            let d = two * p - Real::new(4.0) * x;
            let num = Real::new(16.0) * x * (p - x) * ((p - two * x).sqr() + q.sqr());
            num / ((d - two) * (d - one) * d * (d + one))
        }
    }
}

pub fn skew_data(w: &WeightFamily, jmax: usize) -> Result<SkewData> {
    let kmax = 2 * jmax + 1;
    let one = Real::ONE;
    let two = Real::TWO;
    let mut zeta = Vec::with_capacity(jmax + 1);
    let mut h1 = Vec::with_capacity(jmax + 1);
    let mut h4 = Vec::with_capacity(kmax + 1);
    let rj = Real::from_usize;
    let zeta_of = |j: usize| self::zeta(w, j);
    match w.kind() {
        FamilyKind::Gaussian => {
            let lsp = Real::PI.sqrt().ln();
            for j in 0..=jmax {
                let x = rj(j);
                zeta.push(zeta_of(j));
                h1.push(LogSigned::from_log(-two * x * Real::LN_2 + lsp + lg(two * x + one)?));
            }
            for k in 0..=kmax {
                let x = rj(k);
                h4.push(LogSigned::from_log(-(x + one) * Real::LN_2 + lsp + lg(x + two)?));
            }
        }
        FamilyKind::Laguerre { a } => {
            for j in 0..=jmax {
                let x = rj(j);
                zeta.push(zeta_of(j));
                h1.push(LogSigned::from_log(Real::LN_2 + lg(two * x + one)? + lg(two * x + a + one)?));
            }
            for k in 0..=kmax {
                let x = rj(k);
                h4.push(LogSigned::from_log(-Real::LN_2 + lg(x + two)? + lg(x + a + two)?));
            }
        }
        FamilyKind::Jacobi { a, b } => {
            let ab = a + b;
            for j in 0..=jmax {
                let x = rj(j);
                let t = Real::new(4.0) * x + ab;
                zeta.push(zeta_of(j));
                let l = (ab + Real::new(4.0) * x + two) * Real::LN_2
                    + lg(two * x + one)?
                    + lg(two * x + a + one)?
                    + lg(two * x + b + one)?
                    + lg_ratio(two * x + ab + one, t + one)?
                    - lg(t + Real::new(3.0))?;
                h1.push(LogSigned::from_log(l));
            }
            for k in 0..=kmax {
                let x = rj(k);
                let l = (ab + two * x + two) * Real::LN_2
                    + lg(x + two)?
                    + lg(x + a + two)?
                    + lg(x + b + two)?
                    + lg_ratio(x + ab + two, two * x + ab + two)?
                    - lg(two * x + ab + Real::new(4.0))?;
                h4.push(LogSigned::from_log(l));
            }
        }
        FamilyKind::GenCauchy { p, q } => {
            if !(Real::from_usize(kmax + 1) < p - one) {
                return Err(Error::Range(format!(
                    "Cauchy skew data up to j={jmax} requires 2j+2 < p-1 (p = {})",
                    p.to_sci_string(17)
                )));
            }
            let two_p = two * p;
            let four = Real::new(4.0);
            for j in 0..=jmax {
                let x = rj(j);
                let d = two_p - four * x;
                zeta.push(zeta_of(j));
                let l = (four * x - two_p + Real::new(3.0)) * Real::LN_2 + Real::PI.ln()
                    + lg(two * x + one)?
                    + lg(d)?
                    + lg(d - two)?
                    - lg(two_p - two * x)?
                    - cauchy_gamma_pair(p - two * x, q)?;
                h1.push(LogSigned::from_log(l));
            }
            for k in 0..=kmax {
                if k % 2 == 0 {
                    let j = rj(k / 2);
                    let d = two_p - four * j;
                    let l = (four * j - two_p + Real::new(3.0)) * Real::LN_2 + Real::PI.ln()
                        + lg(two * j + two)?
                        + lg(d - one)?
                        + lg(d - Real::new(3.0))?
                        - lg(two_p - two * j - one)?
                        - cauchy_gamma_pair(p - one - two * j, q)?;
                    h4.push(LogSigned::from_log(l));
                } else {
                    // odd index from h⁽⁴⁾_k = (p - 1 - k) h_{k+1}
                    let f = p - one - rj(k);
                    h4.push(norm_h(w, k + 1)?.scale(f));
                }
            }
        }
    }
    Ok(SkewData { zeta, h1, h4 })
}

/// Coefficients of f p_n' = a_n p_{n+1} + b_n p_n + c_n p_{n-1}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureCoeffs {
    pub a: Real,
    pub b: Real,
    pub c: Real,
}

/// Computes the structure coefficients by projecting f p_n' on the
/// orthogonal basis with a Gauss rule, then checks that the three-term
/// expansion reproduces f p_n' coefficient by coefficient.
pub fn structure_coeffs(w: &WeightFamily, n: usize) -> Result<StructureCoeffs> {
    let ps = monic_op_table(w, n + 1)?;
    let pp = pearson_pair(w);
    let target = &pp.f * &ps[n].derivative();
    let rule = quadrature_rule(w, 64)?;
    let proj = |k: usize| -> Result<Real> {
        Ok(rule.inner2(&target, &ps[k]) / norm_h(w, k)?.to_real())
    };
    let a = proj(n + 1)?;
    let b = proj(n)?;
    let c = if n == 0 { Real::ZERO } else { proj(n - 1)? };
    let zero = Polynomial::zero();
    let pm1 = if n == 0 { &zero } else { ps[n - 1].as_poly() };
    let fit = linear_combine(&[(a, ps[n + 1].as_poly()), (b, ps[n].as_poly()), (c, pm1)]);
    let resid = (&target - &fit).max_abs_coeff();
    let scale = target.max_abs_coeff().max(Real::ONE);
    let rel = (resid / scale).to_f64();
    if rel > 1e-10 {
        return Err(Error::Consistency {
            what: format!("structure relation for {w} at n={n}"),
            residual: rel,
            tol: 1e-10,
        });
    }
    Ok(StructureCoeffs { a, b, c })
}

/// 𝒜p = f p' + ((f' - g)/2) p.
pub fn apply_operator_a(w: &WeightFamily, p: &Polynomial) -> Polynomial {
    let pp = pearson_pair(w);
    let half = (&pp.f.derivative() - &pp.g).scale(Real::HALF);
    &(&pp.f * &p.derivative()) + &(&half * p)
}

/// The constant c_j in 𝒜p_j = -(c_j/h_{j+1}) p_{j+1} + (c_{j-1}/h_{j-1}) p_{j-1}.
///
/// For the Cauchy family the closed form c_j = (p-1-j) h_{j+1} is used;
/// the other families read it off the leading coefficient of 𝒜p_j.
pub fn operator_c(w: &WeightFamily, j: usize) -> Result<LogSigned> {
    let h = norm_h(w, j + 1)?;
    match w.kind() {
        FamilyKind::GenCauchy { p, .. } => Ok(h.scale(p - Real::ONE - Real::from_usize(j))),
        _ => {
            let pj = monic_op_table(w, j)?.pop().unwrap();
            let lead = apply_operator_a(w, pj.as_poly()).coeff(j + 1);
            Ok(h.scale(-lead))
        }
    }
}

/// γ_{2j-1}/γ_{2j} with γ_k = c_k/(h_{k+1} h_k); zero at j = 0.
pub fn beta1_gamma_ratio(w: &WeightFamily, j: usize) -> Result<Real> {
    if j == 0 {
        return Ok(Real::ZERO);
    }
    let gamma = |k: usize| -> Result<LogSigned> {
        Ok(operator_c(w, k)? / (norm_h(w, k + 1)? * norm_h(w, k)?))
    };
    Ok((gamma(2 * j - 1)? / gamma(2 * j)?).to_real())
}

/// The β=1 skew orthogonal polynomial q_n built from the operator route.
/// The ratio γ_{2j-1}/γ_{2j} is checked against the closed-form ζ_j.
pub fn beta1_sop(w: &WeightFamily, n: usize) -> Result<MonicPolynomial> {
    let ps = monic_op_table(w, n)?;
    if n % 2 == 0 {
        return Ok(ps[n].clone());
    }
    let j = n / 2;
    if j == 0 {
        return Ok(ps[1].clone());
    }
    let ratio = beta1_gamma_ratio(w, j)?;
    let zeta = skew_data(w, j)?.zeta[j];
    let rel = ((ratio - zeta).abs() / zeta.abs()).to_f64();
    if rel > 1e-10 {
        return Err(Error::Consistency {
            what: format!("gamma ratio vs zeta_{j} for {w}"),
            residual: rel,
            tol: 1e-10,
        });
    }
    let q = linear_combine(&[(Real::ONE, ps[n].as_poly()), (-ratio, ps[n - 2].as_poly())]);
    Ok(MonicPolynomial::normalized(q.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Real {
        Real::new(x)
    }

    fn close(a: Real, b: Real, tol: f64) -> bool {
        ((a - b).abs() / b.abs().max(Real::new(1e-300))).to_f64() < tol
    }

    #[test]
    fn gaussian_j2() {
        let d = skew_data(&WeightFamily::gaussian(), 2).unwrap();
        let sp = Real::PI.sqrt();
        assert_eq!(d.zeta[2], r(2.0));
        assert!(close(d.h1[2].to_real(), sp * r(24.0) / r(16.0), 1e-28));
        assert!(close(d.h4[2].to_real(), sp * r(6.0) / r(8.0), 1e-28));
    }

    #[test]
    fn laguerre_and_jacobi_examples() {
        let a = r(0.5);
        let d = skew_data(&WeightFamily::laguerre(a).unwrap(), 1).unwrap();
        assert_eq!(d.zeta[1], r(2.0) * (r(2.0) + a));
        let j = skew_data(&WeightFamily::jacobi(a, r(1.5)).unwrap(), 2).unwrap();
        assert_eq!(j.zeta[0], Real::ZERO);
        for fam in WeightFamily::reference_set() {
            let d = skew_data(&fam, 3).unwrap();
            assert_eq!(d.zeta[0], Real::ZERO, "{fam}");
            assert!(d.h1.iter().chain(d.h4.iter()).all(|h| h.sign() == 1));
        }
    }

    #[test]
    fn chebyshev_parameters_do_not_hit_poles() {
        let w = WeightFamily::jacobi(r(-0.5), r(-0.5)).unwrap();
        let d = skew_data(&w, 2).unwrap();
        assert!(d.h1[0].to_real().is_finite());
        assert!(norm_h(&w, 0).unwrap().to_real().is_finite());
    }

    #[test]
    fn cauchy_even_h4_display_matches_generic_form() {
        let w = WeightFamily::reference_set()[3];
        let d = skew_data(&w, 4).unwrap();
        let p = r(25.0);
        for k in (0..=8).step_by(2) {
            let generic = norm_h(&w, k + 1).unwrap().scale(p - Real::ONE - Real::from_usize(k));
            assert!(d.h4[k].rel_diff(generic).to_f64() < 1e-28, "k={k}");
        }
    }

    #[test]
    fn structure_examples() {
        let g = WeightFamily::gaussian();
        for n in 0..6 {
            let s = structure_coeffs(&g, n).unwrap();
            assert!(s.a.abs().to_f64() < 1e-25 && s.b.abs().to_f64() < 1e-25);
            assert!((s.c - Real::from_usize(n)).abs().to_f64() < 1e-25);
        }
        let a = r(0.5);
        let s = structure_coeffs(&WeightFamily::laguerre(a).unwrap(), 1).unwrap();
        assert!(s.a.abs().to_f64() < 1e-25);
        assert!((s.b - Real::ONE).abs().to_f64() < 1e-25);
        assert!((s.c - (a + Real::ONE)).abs().to_f64() < 1e-25);
        for w in WeightFamily::reference_set() {
            assert_eq!(structure_coeffs(&w, 0).unwrap().c, Real::ZERO);
        }
    }

    #[test]
    fn operator_examples() {
        let g = WeightFamily::gaussian();
        let one = Polynomial::constant(Real::ONE);
        assert_eq!(apply_operator_a(&g, &one), Polynomial::from_f64(&[0.0, -1.0]));
        assert_eq!(apply_operator_a(&g, &Polynomial::monomial(1)), Polynomial::from_f64(&[1.0, 0.0, -1.0]));
        let c = WeightFamily::reference_set()[3];
        // real form: (1-p) z + q
        assert_eq!(apply_operator_a(&c, &one), Polynomial::from_f64(&[1.0, -24.0]));
    }

    #[test]
    fn cauchy_operator_c_matches_leading_coefficient() {
        let w = WeightFamily::reference_set()[3];
        let ps = monic_op_table(&w, 8).unwrap();
        for j in 0..8 {
            let lead = apply_operator_a(&w, ps[j].as_poly()).coeff(j + 1);
            let from_lead = norm_h(&w, j + 1).unwrap().scale(-lead);
            assert!(operator_c(&w, j).unwrap().rel_diff(from_lead).to_f64() < 1e-28);
        }
    }

    #[test]
    fn beta1_examples() {
        let g = WeightFamily::gaussian();
        assert_eq!(beta1_sop(&g, 0).unwrap().coeffs(), &[Real::ONE]);
        let ps = monic_op_table(&g, 3).unwrap();
        let q3 = beta1_sop(&g, 3).unwrap();
        let expect = ps[3].as_poly() - ps[1].as_poly();
        assert!((q3.as_poly() - &expect).max_abs_coeff().to_f64() < 1e-28);
        let a = r(0.5);
        let l = WeightFamily::laguerre(a).unwrap();
        let ps = monic_op_table(&l, 3).unwrap();
        let expect = linear_combine(&[(Real::ONE, ps[3].as_poly()), (-(r(4.0) + r(2.0) * a), ps[1].as_poly())]);
        assert!((beta1_sop(&l, 3).unwrap().as_poly() - &expect).max_abs_coeff().to_f64() < 1e-26);
    }

    #[test]
    fn gamma_ratio_reproduces_zeta_all_families() {
        for w in WeightFamily::reference_set() {
            let d = skew_data(&w, 5).unwrap();
            for j in 1..=5 {
                let ratio = beta1_gamma_ratio(&w, j).unwrap();
                assert!(close(ratio, d.zeta[j], 1e-25), "{w} j={j}: {ratio:?} vs {:?}", d.zeta[j]);
            }
        }
    }

    #[test]
    fn h4_consistency_with_structure_coeffs() {
        for w in WeightFamily::reference_set() {
            let d = skew_data(&w, 3).unwrap();
            for j in 0..=6 {
                let sj = structure_coeffs(&w, j).unwrap();
                let sj1 = structure_coeffs(&w, j + 1).unwrap();
                let hj = norm_h(&w, j).unwrap().to_real();
                let hj1 = norm_h(&w, j + 1).unwrap().to_real();
                let h4 = (sj1.c * hj - sj.a * hj1) * Real::HALF;
                assert!(close(h4, d.h4[j].to_real(), 1e-10), "{w} j={j}");
            }
        }
    }
}
