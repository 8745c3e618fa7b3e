//! Dense univariate polynomials over [`Real`].

use crate::error::{Error, Result};
use crate::numeric::Real;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with coefficient `coeffs[k]` of `z^k`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Real>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Real>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| Real::new(c)).collect())
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Real) -> Polynomial {
        Polynomial::new(vec![c])
    }

    /// z^n.
    pub fn monomial(n: usize) -> Polynomial {
        let mut c = vec![Real::ZERO; n + 1];
        c[n] = Real::ONE;
        Polynomial { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Real {
        self.coeffs.get(k).copied().unwrap_or(Real::ZERO)
    }

    pub fn leading(&self) -> Real {
        self.coeffs.last().copied().unwrap_or(Real::ZERO)
    }

    pub fn eval(&self, x: Real) -> Real {
        self.coeffs.iter().rev().fold(Real::ZERO, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * Real::from_usize(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: Real) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> Real {
        self.coeffs.iter().fold(Real::ZERO, |m, c| m.max(c.abs()))
    }
}

/// Coefficient-wise weighted sum of polynomials.
pub fn linear_combine(terms: &[(Real, &Polynomial)]) -> Polynomial {
    let len = terms.iter().map(|(_, p)| p.coeffs.len()).max().unwrap_or(0);
    let mut out = vec![Real::ZERO; len];
    for (s, p) in terms {
        for (o, &c) in out.iter_mut().zip(p.coeffs.iter()) {
            *o += *s * c;
        }
    }
    Polynomial::new(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, b: &Polynomial) -> Polynomial {
        linear_combine(&[(Real::ONE, self), (Real::ONE, b)])
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, b: &Polynomial) -> Polynomial {
        linear_combine(&[(Real::ONE, self), (-Real::ONE, b)])
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-Real::ONE)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, b: &Polynomial) -> Polynomial {
        if self.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Real::ZERO; self.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Polynomial::new(out)
    }
}

/// A polynomial whose leading coefficient is exactly one, or the zero
/// sentinel standing in for p_{-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPolynomial(Polynomial);

impl MonicPolynomial {
    /// Checks that the leading coefficient is exactly 1.
    pub fn new(p: Polynomial) -> Result<MonicPolynomial> {
        if p.leading() != Real::ONE {
            return Err(Error::Domain(format!("leading coefficient {:?} is not 1", p.leading())));
        }
        Ok(MonicPolynomial(p))
    }

    /// Forces the leading coefficient to 1; used where it is 1 up to roundoff.
    pub fn normalized(mut coeffs: Vec<Real>) -> MonicPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if let Some(l) = coeffs.last_mut() {
            *l = Real::ONE;
        }
        MonicPolynomial(Polynomial::new(coeffs))
    }

    /// The p_{-1} placeholder.
    pub fn minus_one() -> MonicPolynomial {
        MonicPolynomial(Polynomial::zero())
    }

    pub fn one() -> MonicPolynomial {
        MonicPolynomial(Polynomial::constant(Real::ONE))
    }

    pub fn is_sentinel(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn coeffs(&self) -> &[Real] {
        self.0.coeffs()
    }

    pub fn eval(&self, x: Real) -> Real {
        self.0.eval(x)
    }
}

impl std::ops::Deref for MonicPolynomial {
    type Target = Polynomial;
    fn deref(&self) -> &Polynomial {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_f64(&[-1.0, 0.0, 1.0]);
        assert_eq!(p.eval(Real::new(2.0)), Real::new(3.0));
        assert_eq!(Polynomial::zero().eval(Real::new(7.0)), Real::ZERO);
        let h2 = Polynomial::from_f64(&[-0.5, 0.0, 1.0]);
        assert_eq!(h2.eval(Real::ZERO), Real::new(-0.5));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Polynomial::monomial(3).derivative(), Polynomial::from_f64(&[0.0, 0.0, 3.0]));
        assert!(Polynomial::constant(Real::new(4.0)).derivative().is_zero());
        let h2 = Polynomial::from_f64(&[-0.5, 0.0, 1.0]);
        assert_eq!(h2.derivative(), Polynomial::from_f64(&[0.0, 2.0]));
    }

    #[test]
    fn linear_combine_examples() {
        let z = Polynomial::monomial(1);
        let one = Polynomial::constant(Real::ONE);
        assert!(linear_combine(&[(Real::ONE, &z), (-Real::ONE, &z)]).is_zero());
        assert_eq!(linear_combine(&[(Real::TWO, &one), (Real::ONE, &z)]), Polynomial::from_f64(&[2.0, 1.0]));
        let p1 = Polynomial::from_f64(&[-1.5, 1.0]);
        let sentinel = MonicPolynomial::minus_one();
        let out = linear_combine(&[(Real::ONE, &p1), (Real::new(-3.0), sentinel.as_poly())]);
        assert_eq!(out, p1);
    }

    #[test]
    fn monic_rejects_non_unit_leading() {
        assert!(MonicPolynomial::new(Polynomial::from_f64(&[1.0, 2.0])).is_err());
        assert!(MonicPolynomial::new(Polynomial::from_f64(&[3.0, 1.0])).is_ok());
        assert!(MonicPolynomial::minus_one().is_sentinel());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-8i32..=8, 0..=7)
            .prop_map(|v| Polynomial::new(v.into_iter().map(Real::from).collect()))
    }

    proptest! {
        #[test]
        fn leibniz_rule(p in small_poly(), q in small_poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_linear(p in small_poly(), q in small_poly(), a in -3.0f64..3.0, b in -3.0f64..3.0, x in -2.0f64..2.0) {
            let (a, b, x) = (Real::new(a), Real::new(b), Real::new(x));
            let lhs = linear_combine(&[(a, &p), (b, &q)]).eval(x);
            let rhs = a * p.eval(x) + b * q.eval(x);
            let scale = (a * p.eval(x)).abs() + (b * q.eval(x)).abs() + Real::ONE;
            prop_assert!(((lhs - rhs).abs() / scale).to_f64() < 1e-14);
        }
    }
}
