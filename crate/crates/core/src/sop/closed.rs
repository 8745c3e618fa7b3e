//! Hypergeometric closed forms for α_j(X) and c_j, normalized so that α_0 = 1.

use super::hyp::hyp_terminating;
use crate::classical::{FamilyKind, WeightFamily};
use crate::error::{Error, Result};
use crate::numeric::{log_gamma_complex, log_gamma_real, Complex, Real};

fn lg(x: Real) -> Result<Real> {
    log_gamma_real(x)
}

/// α_j(X) from the terminating series of each family.
///
/// * Gaussian:  ₁F₁(-j; ½; -X²) / j!
/// * Laguerre:  ₃F₂(-j, (a+1)/2 - X, (a+1)/2 + X; (a+2)/2, (a+1)/2 | 1) / (2j)!
/// * Jacobi:    r_j ₄F₃(-j, j + (a+b+1)/2, (a+1-X)/2, (a+1+X)/2; (a+1)/2, (a+2)/2, (a+b+2)/2 | 1)
///   with r_j = 4^{-j} Γ(4j+a+b+2) Γ(b+1) / (Γ(a+b+2) Γ(2j+1) Γ(2j+b+1))
/// * Cauchy:    Re[r_j ₄F₃(-j, j - p + ½, A + iX/2, A - iX/2; 1 - p, A + ½, A | 1)]
///   with A = (1 - p - iq)/2 and
///   r_j = (-4)^{-j} Γ(p - 2j - iq) Γ(2p - 1) / (Γ(p - iq) Γ(2j+1) Γ(2p - 4j - 1))
pub fn closed_form_alpha(w: &WeightFamily, x: Real, j: usize) -> Result<Real> {
    let jr = Real::from_usize(j);
    let nj = -jr;
    let one = Real::ONE;
    let two = Real::TWO;
    let half = Real::HALF;
    match w.kind() {
        FamilyKind::Gaussian => {
            let f = hyp_terminating(&[nj], &[half], -x.sqr())?;
            Ok(f / lg(jr + one)?.exp())
        }
        FamilyKind::Laguerre { a } => {
            let h = (a + one) * half;
            let f = hyp_terminating(&[nj, h - x, h + x], &[(a + two) * half, h], one)?;
            Ok(f / lg(two * jr + one)?.exp())
        }
        FamilyKind::Jacobi { a, b } => {
            let ab = a + b;
            let f = hyp_terminating(
                &[nj, jr + (ab + one) * half, (a + one - x) * half, (a + one + x) * half],
                &[(a + one) * half, (a + two) * half, (ab + two) * half],
                one,
            )?;
            let lr = -two * jr * Real::LN_2 + lg(Real::new(4.0) * jr + ab + two)? + lg(b + one)?
                - lg(ab + two)?
                - lg(two * jr + one)?
                - lg(two * jr + b + one)?;
            Ok(lr.exp() * f)
        }
        FamilyKind::GenCauchy { p, q } => {
            let rc = Complex::from_real;
            let big_a = Complex::new((one - p) * half, -q * half);
            let ix = Complex::new(Real::ZERO, x * half);
            let f = hyp_terminating(
                &[rc(nj), rc(jr - p + half), big_a + ix, big_a - ix],
                &[rc(one - p), big_a + rc(half), big_a],
                Complex::ONE,
            )?;
            let lr = log_gamma_complex(Complex::new(p - two * jr, -q))? - log_gamma_complex(Complex::new(p, -q))?
                + rc(-two * jr * Real::LN_2 + lg(two * p - one)? - lg(two * jr + one)?
                    - lg(two * p - Real::new(4.0) * jr - one)?);
            let sign = if j % 2 == 0 { one } else { -one };
            let v = lr.exp() * f * sign;
            let scale = v.re.abs().max(v.im.abs());
            if (v.im.abs() / scale).to_f64() > 1e-20 {
                return Err(Error::Consistency {
                    what: format!("imaginary part of closed-form alpha_{j} for {w}"),
                    residual: (v.im.abs() / scale).to_f64(),
                    tol: 1e-20,
                });
            }
            Ok(v.re)
        }
    }
}

/// c_j in closed form: 1 for Gaussian and Laguerre, (2+a+b)/(4j+a+b+2) for
/// Jacobi and (2p-2)/(2p-4j-2) for Cauchy.
pub fn closed_form_c(w: &WeightFamily, j: usize) -> Real {
    let jr = Real::from_usize(j);
    match w.kind() {
        FamilyKind::Gaussian | FamilyKind::Laguerre { .. } => Real::ONE,
        FamilyKind::Jacobi { a, b } => (Real::TWO + a + b) / (Real::new(4.0) * jr + a + b + Real::TWO),
        FamilyKind::GenCauchy { p, .. } => {
            (Real::TWO * p - Real::TWO) / (Real::TWO * p - Real::new(4.0) * jr - Real::TWO)
        }
    }
}

/// ξ_j = α_j / c_j from the closed forms.
pub fn closed_form_xi(w: &WeightFamily, x: Real, j: usize) -> Result<Real> {
    Ok(closed_form_alpha(w, x, j)? / closed_form_c(w, j))
}
