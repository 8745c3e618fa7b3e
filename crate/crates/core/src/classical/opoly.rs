//! Monic orthogonal polynomials and their norms.

use super::{FamilyKind, WeightFamily};
use crate::error::{Error, Result};
use crate::numeric::{log_gamma_complex, log_gamma_real, Complex, LogSigned, Real, Scalar};
use crate::poly::{MonicPolynomial, Polynomial};

/// Recurrence coefficients of the monic Jacobi polynomials for the weight
/// (1-x)^a (1+x)^b:  p_{n+1} = (x - B_n) p_n - C_n p_{n-1}.
fn jacobi_bc<T: Scalar>(a: T, b: T, n: usize) -> (T, T) {
    let r = |x: f64| T::from_real(Real::new(x));
    let nn = r(n as f64);
    let s = nn + nn + a + b;
    let bn = if n == 0 { (b - a) / (a + b + r(2.0)) } else { (b * b - a * a) / (s * (s + r(2.0))) };
    let cn = match n {
        0 => T::zero(),
        // the factor (1+a+b) cancels analytically; dividing it out avoids 0/0
        1 => r(4.0) * (r(1.0) + a) * (r(1.0) + b) / ((s * s) * (s + r(1.0))),
        _ => {
            r(4.0) * nn * (nn + a) * (nn + b) * (nn + a + b)
                / (s * s * (s + r(1.0)) * (s - r(1.0)))
        }
    };
    (bn, cn)
}

fn cauchy_c(p: Real, q: Real) -> Complex {
    Complex::new(-p, q)
}

/// Real monic three-term recurrence coefficients (B_n, C_n) of the family.
///
/// For the Cauchy family these come from the Jacobi coefficients at
/// (a, b) = (c, c̄): substituting x = iz turns the recurrence into
/// Ĩ_{n+1} = (z + iB_n) Ĩ_n + C_n Ĩ_{n-1}, with iB_n and C_n real.
pub fn recurrence_coeffs(w: &WeightFamily, n: usize) -> Result<(Real, Real)> {
    Ok(match w.kind() {
        FamilyKind::Gaussian => (Real::ZERO, Real::from_usize(n).ldexp(-1)),
        FamilyKind::Laguerre { a } => {
            let nn = Real::from_usize(n);
            (Real::TWO * nn + a + Real::ONE, nn * (nn + a))
        }
        FamilyKind::Jacobi { a, b } => jacobi_bc(a, b, n),
        FamilyKind::GenCauchy { p, q } => {
            if !(Real::from_usize(n + 1) < p) {
                return Err(Error::Range(format!("Cauchy recurrence index {n} needs n+1 < p")));
            }
            let c = cauchy_c(p, q);
            let (bn, cn) = jacobi_bc(c, c.conj(), n);
            // B' = -i B_n, C' = -C_n
            (-(bn.mul_i_pow(1)).re, -cn.re)
        }
    })
}

/// p_0 .. p_n for the Cauchy family by the complex Jacobi detour.
fn cauchy_table(p: Real, q: Real, n: usize) -> Result<Vec<MonicPolynomial>> {
    if !(Real::from_usize(n) < p) {
        return Err(Error::Range(format!(
            "Cauchy orthogonal polynomial of degree {n} requires n < p = {}",
            p.to_sci_string(17)
        )));
    }
    let c = cauchy_c(p, q);
    let cb = c.conj();
    // complex monic Jacobi polynomials, coefficient vectors
    let mut prev: Vec<Complex> = vec![];
    let mut cur: Vec<Complex> = vec![Complex::ONE];
    let mut jac: Vec<Vec<Complex>> = vec![cur.clone()];
    for k in 0..n {
        let (bk, ck) = jacobi_bc(c, cb, k);
        let mut next = vec![Complex::ZERO; k + 2];
        for (i, &v) in cur.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= bk * v;
        }
        for (i, &v) in prev.iter().enumerate() {
            next[i] -= ck * v;
        }
        prev = std::mem::replace(&mut cur, next);
        jac.push(cur.clone());
    }
    // Ĩ_m(z) = i^{-m} p_m(iz):  coefficient of z^k is a_k i^{k-m}
    let mut out = Vec::with_capacity(n + 1);
    for (m, coeffs) in jac.iter().enumerate() {
        let mut re = Vec::with_capacity(coeffs.len());
        let mut worst = Real::ZERO;
        let mut scale = Real::ZERO;
        for (k, a) in coeffs.iter().enumerate() {
            let v = a.mul_i_pow(k as i64 - m as i64);
            worst = worst.max(v.im.abs());
            scale = scale.max(v.re.abs());
            re.push(v.re);
        }
        let ratio = (worst / scale).to_f64();
        if ratio > 1e-20 {
            return Err(Error::Consistency {
                what: format!("imaginary residue of Cauchy polynomial degree {m}"),
                residual: ratio,
                tol: 1e-20,
            });
        }
        out.push(MonicPolynomial::normalized(re));
    }
    Ok(out)
}

/// The monic orthogonal polynomials p_0 .. p_n.
pub fn monic_op_table(w: &WeightFamily, n: usize) -> Result<Vec<MonicPolynomial>> {
    if let FamilyKind::GenCauchy { p, q } = w.kind() {
        return cauchy_table(p, q, n);
    }
    let mut out = vec![MonicPolynomial::one()];
    let mut prev = Polynomial::zero();
    let mut cur = Polynomial::constant(Real::ONE);
    for k in 0..n {
        let (bk, ck) = recurrence_coeffs(w, k)?;
        let zc = &Polynomial::monomial(1) * &cur;
        let next = crate::poly::linear_combine(&[(Real::ONE, &zc), (-bk, &cur), (-ck, &prev)]);
        prev = std::mem::replace(&mut cur, next);
        out.push(MonicPolynomial::normalized(cur.coeffs().to_vec()));
    }
    Ok(out)
}

/// The monic orthogonal polynomial of degree n.
pub fn monic_op(w: &WeightFamily, n: usize) -> Result<MonicPolynomial> {
    Ok(monic_op_table(w, n)?.pop().expect("table is nonempty"))
}

fn lg(x: Real) -> Result<Real> {
    log_gamma_real(x)
}

/// ‖p_n‖² in the weight e^{-2V}.
pub fn norm_h(w: &WeightFamily, n: usize) -> Result<LogSigned> {
    let nn = Real::from_usize(n);
    let one = Real::ONE;
    let l = match w.kind() {
        FamilyKind::Gaussian => {
            -nn * Real::LN_2 + Real::PI.sqrt().ln() + lg(nn + one)?
        }
        FamilyKind::Laguerre { a } => lg(nn + one)? + lg(nn + a + one)?,
        FamilyKind::Jacobi { a, b } => {
            let s = Real::TWO * nn + a + b;
            // Γ(n+a+b+1)/Γ(2n+a+b+1) is 1 at n = 0, even when both sit on a pole
            let ratio = if n == 0 { Real::ZERO } else { lg(nn + a + b + one)? - lg(s + one)? };
            (s + one) * Real::LN_2 + lg(nn + one)? + lg(nn + a + one)? + lg(nn + b + one)? + ratio
                - lg(s + Real::TWO)?
        }
        FamilyKind::GenCauchy { p, q } => {
            if !(nn < p - one) {
                return Err(Error::Range(format!(
                    "Cauchy norm h_{n} requires n < p - 1 (p = {})",
                    p.to_sci_string(17)
                )));
            }
            let two_p = Real::TWO * p;
            let real_part = (Real::TWO * nn - two_p + Real::TWO) * Real::LN_2 + Real::PI.ln()
                + lg(nn + one)?
                + lg(two_p - Real::TWO * nn)?
                + lg(two_p - Real::TWO * nn - one)?
                - lg(two_p - nn)?;
            let g1 = log_gamma_complex(Complex::new(p - nn, -q))?;
            let g2 = log_gamma_complex(Complex::new(p - nn, q))?;
            let denom = g1 + g2;
            check_real(denom, "Cauchy norm")?;
            real_part - denom.re
        }
    };
    Ok(LogSigned::from_log(l))
}

/// Asserts that a log of a product of conjugate gamma values is real.
pub(crate) fn check_real(z: Complex, what: &str) -> Result<()> {
    let scale = z.re.abs().max(Real::ONE);
    let ratio = (z.im.abs() / scale).to_f64();
    if ratio > 1e-20 {
        return Err(Error::Consistency { what: format!("imaginary residue in {what}"), residual: ratio, tol: 1e-20 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Real {
        Real::new(x)
    }

    #[test]
    fn hermite_p2() {
        let p2 = monic_op(&WeightFamily::gaussian(), 2).unwrap();
        assert_eq!(p2.coeffs(), &[r(-0.5), r(0.0), r(1.0)]);
    }

    #[test]
    fn laguerre_p1() {
        let a = r(0.5);
        let p1 = monic_op(&WeightFamily::laguerre(a).unwrap(), 1).unwrap();
        assert_eq!(p1.coeffs(), &[-(a + Real::ONE), Real::ONE]);
    }

    #[test]
    fn degree_zero_is_one() {
        for w in WeightFamily::reference_set() {
            assert_eq!(monic_op(&w, 0).unwrap().coeffs(), &[Real::ONE]);
        }
    }

    #[test]
    fn legendre_p2() {
        // monic Legendre: z^2 - 1/3
        let p2 = monic_op(&WeightFamily::jacobi(Real::ZERO, Real::ZERO).unwrap(), 2).unwrap();
        assert!((p2.coeff(0) + Real::ONE / r(3.0)).abs().to_f64() < 1e-31);
        assert!(p2.coeff(1).abs().to_f64() < 1e-31);
    }

    #[test]
    fn cauchy_polynomials_are_real_and_symmetric_at_q0() {
        let w = WeightFamily::gencauchy(r(25.0), Real::ZERO).unwrap();
        let t = monic_op_table(&w, 6).unwrap();
        // even weight: odd/even parity
        for (n, p) in t.iter().enumerate() {
            for k in 0..=n {
                if (n + k) % 2 == 1 {
                    assert!(p.coeff(k).abs().to_f64() < 1e-28);
                }
            }
        }
        // p_1 = z for the symmetric weight, p_2 = z^2 - 1/(2p-3)
        assert!((t[2].coeff(0) + Real::ONE / r(47.0)).abs().to_f64() < 1e-30);
    }

    #[test]
    fn cauchy_degree_guard() {
        let w = WeightFamily::gencauchy(r(5.0), Real::ONE).unwrap();
        assert!(monic_op(&w, 4).is_ok());
        assert!(monic_op(&w, 5).is_err());
        assert!(norm_h(&w, 4).is_err());
    }

    #[test]
    fn norm_examples() {
        let h3 = norm_h(&WeightFamily::gaussian(), 3).unwrap().to_real();
        let expect = Real::PI.sqrt() * r(6.0) / r(8.0);
        assert!(((h3 - expect) / expect).abs().to_f64() < 1e-30);
        let l = norm_h(&WeightFamily::laguerre(r(2.0)).unwrap(), 1).unwrap().to_real();
        assert!((l - r(6.0)).abs().to_f64() < 1e-29);
        let j = norm_h(&WeightFamily::jacobi(r(0.0), r(0.0)).unwrap(), 0).unwrap().to_real();
        assert!((j - r(2.0)).abs().to_f64() < 1e-28);
    }

    #[test]
    fn cauchy_h0_is_total_mass() {
        // ∫ (1+z^2)^{-p} dz = √π Γ(p-1/2)/Γ(p) at q = 0
        let p = r(25.0);
        let w = WeightFamily::gencauchy(p, Real::ZERO).unwrap();
        let h0 = norm_h(&w, 0).unwrap().to_real();
        let expect = (Real::PI.sqrt().ln() + log_gamma_real(p - Real::HALF).unwrap()
            - log_gamma_real(p).unwrap())
        .exp();
        assert!(((h0 - expect) / expect).abs().to_f64() < 1e-28);
    }
}
