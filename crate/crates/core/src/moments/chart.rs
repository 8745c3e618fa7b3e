//! Per-family integration coordinates for w1 = e^{-V₁}.
//!
//! Gaussian, Laguerre and Jacobi use t = z. The Cauchy family uses the angle
//! θ with z = tan(θ/2), which turns the algebraic tails into endpoint zeros on
//! (-π, π).

use super::de::{DeNode, Segment};
use crate::classical::{FamilyKind, WeightFamily};
use crate::numeric::Real;

/// The integration chart: coordinate t on (lo, hi), with w1(z) dz = m(t) dt.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Chart {
    family: WeightFamily,
    lo: Option<Real>,
    hi: Option<Real>,
    split: Real,
}

impl Chart {
    pub(crate) fn new(w: &WeightFamily) -> Chart {
        let (lo, hi, split) = match w.kind() {
            FamilyKind::Gaussian => (None, None, Real::ZERO),
            FamilyKind::Laguerre { a } => (Some(Real::ZERO), None, (a + Real::ONE).max(Real::ONE)),
            FamilyKind::Jacobi { .. } => (Some(-Real::ONE), Some(Real::ONE), Real::ZERO),
            FamilyKind::GenCauchy { .. } => (Some(-Real::PI), Some(Real::PI), Real::ZERO),
        };
        Chart { family: *w, lo, hi, split }
    }

    /// (z, ln m) at a chart node.
    pub(crate) fn eval(&self, n: &DeNode) -> (Real, Real) {
        let half = Real::HALF;
        match self.family.kind() {
            FamilyKind::Gaussian => (n.t, -n.t.sqr() * half),
            FamilyKind::Laguerre { a } => {
                let x = n.dist_lo;
                (x, (a - Real::ONE) * half * x.ln() - x * half)
            }
            FamilyKind::Jacobi { a, b } => {
                let l = (a - Real::ONE) * half * n.dist_hi.ln() + (b - Real::ONE) * half * n.dist_lo.ln();
                (n.t, l)
            }
            FamilyKind::GenCauchy { p, q } => {
                // cos(θ/2) = sin(d/2) with d the distance to the nearer end ±π
                let right = n.t >= Real::ZERO;
                let d = if right { n.dist_hi } else { n.dist_lo };
                let (s, c) = (d * half).sin_cos();
                let z = if right { c / s } else { -c / s };
                let l = -Real::LN_2 + (p - Real::ONE) * s.ln() + q * half * n.t;
                (z, l)
            }
        }
    }

    /// The segments [lo, c] and [c, hi], each paired with whether its
    /// support end sits at s = -S_MAX (otherwise at s = +S_MAX).
    pub(crate) fn segments(&self) -> [(Segment, bool); 2] {
        let c = self.split;
        let dlo_c = self.lo.map_or(Real::INFINITY, |l| c - l);
        let dhi_c = self.hi.map_or(Real::INFINITY, |h| h - c);
        let left = match self.lo {
            Some(lo) => (Segment::Finite { a: lo, len: c - lo, dlo_a: Real::ZERO, dhi_b: dhi_c }, true),
            None => (Segment::LeftOf { b: c, dhi_b: dhi_c }, false),
        };
        let right = match self.hi {
            Some(hi) => (Segment::Finite { a: c, len: hi - c, dlo_a: dlo_c, dhi_b: Real::ZERO }, false),
            None => (Segment::RightOf { a: c, dlo_a: dlo_c }, false),
        };
        [left, right]
    }
}
