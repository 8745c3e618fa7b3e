//! The four classical weight families.
//!
//! Each family is described by its β=2 weight `w2 = e^{-2V}` together with a
//! Pearson pair `(f, g)` satisfying `2V' = g/f`. From these the two-component
//! weights follow as `w1 = e^{-V}/√f` and `w4 = e^{-2V} f`.
//!
//! The generalised Cauchy weight `(1-iz)^c (1+iz)^{c̄}` with `c = -p + iq`
//! equals `(1+z²)^{-p} exp(2q arctan z)` on the real line. Its real Pearson
//! pair is `(1+z², 2pz - 2q)`.

mod opoly;
mod skew;

pub use opoly::{monic_op, monic_op_table, norm_h, recurrence_coeffs};
pub use skew::{
    apply_operator_a, beta1_gamma_ratio, beta1_sop, operator_c, skew_data, structure_coeffs,
    zeta, SkewData, StructureCoeffs,
};

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::poly::Polynomial;
use std::fmt;

/// Which family, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    Gaussian,
    Laguerre { a: Real },
    Jacobi { a: Real, b: Real },
    GenCauchy { p: Real, q: Real },
}

/// Support interval of the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    RealLine,
    HalfLine,
    UnitInterval,
}

impl Support {
    pub fn lower(self) -> Option<Real> {
        match self {
            Support::RealLine => None,
            Support::HalfLine => Some(Real::ZERO),
            Support::UnitInterval => Some(-Real::ONE),
        }
    }

    pub fn upper(self) -> Option<Real> {
        match self {
            Support::UnitInterval => Some(Real::ONE),
            _ => None,
        }
    }

    /// Open-interval membership.
    pub fn contains(self, z: Real) -> bool {
        self.lower().is_none_or(|l| z > l) && self.upper().is_none_or(|u| z < u)
    }
}

/// A validated classical weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightFamily {
    kind: FamilyKind,
}

impl WeightFamily {
    pub fn gaussian() -> WeightFamily {
        WeightFamily { kind: FamilyKind::Gaussian }
    }

    pub fn laguerre(a: Real) -> Result<WeightFamily> {
        if !(a > -Real::ONE) {
            return Err(Error::InvalidParameter(format!("Laguerre requires a > -1, got {a:?}")));
        }
        Ok(WeightFamily { kind: FamilyKind::Laguerre { a } })
    }

    pub fn jacobi(a: Real, b: Real) -> Result<WeightFamily> {
        if !(a > -Real::ONE) || !(b > -Real::ONE) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi requires a, b > -1, got a={a:?}, b={b:?}"
            )));
        }
        Ok(WeightFamily { kind: FamilyKind::Jacobi { a, b } })
    }

    /// Requires p > 1/2 for integrability of w2; larger problems impose the
    /// stricter guard checked by [`WeightFamily::check_size`].
    pub fn gencauchy(p: Real, q: Real) -> Result<WeightFamily> {
        if !(p > Real::HALF) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "generalised Cauchy requires p > 1/2, got p={p:?}"
            )));
        }
        Ok(WeightFamily { kind: FamilyKind::GenCauchy { p, q } })
    }

    /// The reference parameter sets used throughout the tests.
    pub fn reference_set() -> [WeightFamily; 4] {
        [
            WeightFamily::gaussian(),
            WeightFamily::laguerre(Real::HALF).unwrap(),
            WeightFamily::jacobi(Real::HALF, Real::new(1.5)).unwrap(),
            WeightFamily::gencauchy(Real::new(25.0), Real::ONE).unwrap(),
        ]
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Gaussian => "gaussian",
            FamilyKind::Laguerre { .. } => "laguerre",
            FamilyKind::Jacobi { .. } => "jacobi",
            FamilyKind::GenCauchy { .. } => "gencauchy",
        }
    }

    /// Named parameters in canonical order.
    pub fn params(&self) -> Vec<(&'static str, Real)> {
        match self.kind {
            FamilyKind::Gaussian => vec![],
            FamilyKind::Laguerre { a } => vec![("a", a)],
            FamilyKind::Jacobi { a, b } => vec![("a", a), ("b", b)],
            FamilyKind::GenCauchy { p, q } => vec![("p", p), ("q", q)],
        }
    }

    pub fn support(&self) -> Support {
        match self.kind {
            FamilyKind::Gaussian | FamilyKind::GenCauchy { .. } => Support::RealLine,
            FamilyKind::Laguerre { .. } => Support::HalfLine,
            FamilyKind::Jacobi { .. } => Support::UnitInterval,
        }
    }

    /// Guard for a 2N x 2N moment problem. Only the Cauchy family has a
    /// finite number of moments; it needs p > 2N + 1.
    pub fn check_size(&self, n: usize) -> Result<()> {
        if let FamilyKind::GenCauchy { p, .. } = self.kind {
            let bound = Real::from_usize(2 * n + 1);
            if !(p > bound) {
                return Err(Error::InvalidParameter(format!(
                    "generalised Cauchy with N={n} requires p > {}, got p={}",
                    2 * n + 1,
                    p.to_sci_string(17)
                )));
            }
        }
        Ok(())
    }

    /// Largest polynomial degree d for which ∫ z^d w2 converges
    /// (unbounded families report usize::MAX).
    pub fn max_w2_degree(&self) -> usize {
        match self.kind {
            FamilyKind::GenCauchy { p, .. } => {
                // need d - 2p < -1
                let lim = (Real::TWO * p - Real::ONE).ceil().to_f64() as usize;
                lim.saturating_sub(1)
            }
            _ => usize::MAX,
        }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        let ps = self.params();
        if !ps.is_empty() {
            let body: Vec<String> =
                ps.iter().map(|(k, v)| format!("{k}={}", v.to_sci_string(17))).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

/// Polynomials (f, g) with 2V' = g/f.
#[derive(Clone, Debug, PartialEq)]
pub struct PearsonPair {
    pub f: Polynomial,
    pub g: Polynomial,
}

pub fn pearson_pair(w: &WeightFamily) -> PearsonPair {
    let (f, g) = match w.kind {
        FamilyKind::Gaussian => (Polynomial::constant(Real::ONE), Polynomial::new(vec![Real::ZERO, Real::TWO])),
        FamilyKind::Laguerre { a } => (Polynomial::monomial(1), Polynomial::new(vec![-a, Real::ONE])),
        FamilyKind::Jacobi { a, b } => (
            Polynomial::new(vec![Real::ONE, Real::ZERO, -Real::ONE]),
            Polynomial::new(vec![a - b, a + b]),
        ),
        FamilyKind::GenCauchy { p, q } => (
            Polynomial::new(vec![Real::ONE, Real::ZERO, Real::ONE]),
            Polynomial::new(vec![-Real::TWO * q, Real::TWO * p]),
        ),
    };
    PearsonPair { f, g }
}

/// 2V'(z), differentiated analytically from the weight.
pub fn two_v_prime(w: &WeightFamily, z: Real) -> Real {
    match w.kind {
        FamilyKind::Gaussian => Real::TWO * z,
        FamilyKind::Laguerre { a } => Real::ONE - a / z,
        FamilyKind::Jacobi { a, b } => a / (Real::ONE - z) - b / (Real::ONE + z),
        FamilyKind::GenCauchy { p, q } => (Real::TWO * p * z - Real::TWO * q) / (Real::ONE + z.sqr()),
    }
}

/// Which of the three derived weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// e^{-2V}
    W2,
    /// e^{-V_1} = e^{-V}/√f
    W1,
    /// e^{-2V_2} = e^{-2V} f
    W4,
}

/// A point of the support with its distances to the two endpoints.
///
/// Carrying the distances separately keeps factors such as `(1 - z)^s`
/// accurate when z sits extremely close to an endpoint.
#[derive(Clone, Copy, Debug)]
pub struct SupportPoint {
    pub z: Real,
    pub dist_lo: Real,
    pub dist_hi: Real,
}

impl SupportPoint {
    /// Distances derived from z (infinite when the side is unbounded).
    pub fn at(w: &WeightFamily, z: Real) -> SupportPoint {
        let s = w.support();
        SupportPoint {
            z,
            dist_lo: s.lower().map_or(Real::INFINITY, |l| z - l),
            dist_hi: s.upper().map_or(Real::INFINITY, |u| u - z),
        }
    }
}

/// Evaluates one of w2, w1, w4 at a support point.
pub fn weight_at(w: &WeightFamily, which: WeightKind, pt: &SupportPoint) -> Real {
    // exponent multiplier: w2 has power 1 of e^{-2V}; w1 is its square root over √f
    let z = pt.z;
    match w.kind {
        FamilyKind::Gaussian => match which {
            WeightKind::W2 | WeightKind::W4 => (-z.sqr()).exp(),
            WeightKind::W1 => (-z.sqr().ldexp(-1)).exp(),
        },
        FamilyKind::Laguerre { a } => {
            let x = pt.dist_lo;
            let (pw, decay) = match which {
                WeightKind::W2 => (a, x),
                WeightKind::W1 => ((a - Real::ONE).ldexp(-1), x.ldexp(-1)),
                WeightKind::W4 => (a + Real::ONE, x),
            };
            (pw * x.ln() - decay).exp()
        }
        FamilyKind::Jacobi { a, b } => {
            let (pa, pb) = match which {
                WeightKind::W2 => (a, b),
                WeightKind::W1 => ((a - Real::ONE).ldexp(-1), (b - Real::ONE).ldexp(-1)),
                WeightKind::W4 => (a + Real::ONE, b + Real::ONE),
            };
            (pa * pt.dist_hi.ln() + pb * pt.dist_lo.ln()).exp()
        }
        FamilyKind::GenCauchy { p, q } => {
            let l = (Real::ONE + z.sqr()).ln();
            let t = z.atan();
            let (pw, qq) = match which {
                WeightKind::W2 => (-p, Real::TWO * q),
                WeightKind::W1 => (-(p + Real::ONE).ldexp(-1), q),
                WeightKind::W4 => (Real::ONE - p, Real::TWO * q),
            };
            (pw * l + qq * t).exp()
        }
    }
}

/// Pointwise weight evaluation with a domain check.
pub fn eval_weight(w: &WeightFamily, which: WeightKind, z: Real) -> Result<Real> {
    if !w.support().contains(z) {
        return Err(Error::Domain(format!("{} is outside the support of {w}", z.to_sci_string(17))));
    }
    Ok(weight_at(w, which, &SupportPoint::at(w, z)))
}

/// The three weights of a family bundled as closures.
pub struct Weights {
    family: WeightFamily,
}

impl Weights {
    pub fn w2(&self, z: Real) -> Result<Real> {
        eval_weight(&self.family, WeightKind::W2, z)
    }
    pub fn w1(&self, z: Real) -> Result<Real> {
        eval_weight(&self.family, WeightKind::W1, z)
    }
    pub fn w4(&self, z: Real) -> Result<Real> {
        eval_weight(&self.family, WeightKind::W4, z)
    }
}

pub fn weights(w: &WeightFamily) -> Weights {
    Weights { family: *w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Real {
        Real::new(x)
    }

    #[test]
    fn pearson_examples() {
        let g = pearson_pair(&WeightFamily::gaussian());
        assert_eq!(g.f, Polynomial::constant(Real::ONE));
        assert_eq!(g.g, Polynomial::from_f64(&[0.0, 2.0]));
        let l = pearson_pair(&WeightFamily::laguerre(r(0.5)).unwrap());
        assert_eq!(l.f, Polynomial::monomial(1));
        assert_eq!(l.g, Polynomial::from_f64(&[-0.5, 1.0]));
        let j = pearson_pair(&WeightFamily::jacobi(r(0.5), r(1.5)).unwrap());
        assert_eq!(j.f, Polynomial::from_f64(&[1.0, 0.0, -1.0]));
        assert_eq!(j.g, Polynomial::from_f64(&[-1.0, 2.0]));
    }

    #[test]
    fn pearson_equation_holds_at_samples() {
        for w in WeightFamily::reference_set() {
            let pp = pearson_pair(&w);
            for k in 0..20 {
                let z = match w.support() {
                    Support::UnitInterval => r(-0.95 + 0.1 * k as f64),
                    Support::HalfLine => r(0.05 + 0.7 * k as f64),
                    Support::RealLine => r(-5.0 + 0.5 * k as f64 + 0.01),
                };
                let res = two_v_prime(&w, z) * pp.f.eval(z) - pp.g.eval(z);
                assert!(res.abs().to_f64() < 1e-28, "{w} z={z:?} res={res:?}");
            }
        }
    }

    #[test]
    fn log_derivative_of_w2_matches_two_v_prime() {
        // central difference of -ln w2 compared with the analytic 2V'
        for w in WeightFamily::reference_set() {
            let z = match w.support() {
                Support::UnitInterval => r(0.3),
                Support::HalfLine => r(1.7),
                Support::RealLine => r(0.6),
            };
            let h = r(1e-8);
            let lp = eval_weight(&w, WeightKind::W2, z + h).unwrap().ln();
            let lm = eval_weight(&w, WeightKind::W2, z - h).unwrap().ln();
            let fd = -(lp - lm) / (h * Real::TWO);
            assert!((fd - two_v_prime(&w, z)).abs().to_f64() < 1e-14, "{w}");
        }
    }

    #[test]
    fn weight_examples() {
        let ws = weights(&WeightFamily::gaussian());
        let z = r(1.3);
        assert!((ws.w1(z).unwrap() - (-z.sqr() / Real::TWO).exp()).abs().to_f64() < 1e-30);
        let lag = weights(&WeightFamily::laguerre(r(0.5)).unwrap());
        let expect = z.powr(r(-0.25)) * (-z / Real::TWO).exp();
        assert!((lag.w1(z).unwrap() - expect).abs().to_f64() < 1e-29);
        let jac = weights(&WeightFamily::jacobi(r(0.5), r(1.5)).unwrap());
        let y = r(0.25);
        let expect = (Real::ONE - y).powr(r(1.5)) * (Real::ONE + y).powr(r(2.5));
        assert!((jac.w4(y).unwrap() - expect).abs().to_f64() < 1e-29);
        assert!(jac.w2(r(1.5)).is_err());
    }

    #[test]
    fn products_of_weights_are_consistent() {
        // w1^2 f = w2 and w4 = w2 f
        for w in WeightFamily::reference_set() {
            let pp = pearson_pair(&w);
            let ws = weights(&w);
            let z = if w.support() == Support::UnitInterval { r(-0.4) } else { r(0.8) };
            let f = pp.f.eval(z);
            let w2 = ws.w2(z).unwrap();
            assert!(((ws.w1(z).unwrap().sqr() * f - w2) / w2).abs().to_f64() < 1e-29);
            assert!(((ws.w4(z).unwrap() - w2 * f) / w2).abs().to_f64() < 1e-29);
        }
    }

    #[test]
    fn cauchy_guard() {
        let w = WeightFamily::gencauchy(r(5.0), Real::ZERO).unwrap();
        assert!(w.check_size(1).is_ok());
        assert!(w.check_size(2).is_err());
        assert!(w.check_size(4).is_err());
        assert!(WeightFamily::reference_set()[3].check_size(11).is_ok());
        assert!(WeightFamily::laguerre(r(-1.0)).is_err());
        assert!(WeightFamily::jacobi(r(0.0), r(-2.0)).is_err());
    }
}
