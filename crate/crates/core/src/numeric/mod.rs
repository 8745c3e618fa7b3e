//! Scalar arithmetic used throughout the crate.
//!
//! [`Real`] is a double-double number with about 31 significant digits.
//! [`Complex`] sits on top of it, [`LogSigned`] carries products of gamma
//! values without overflow, and the [`gamma`] submodule provides log-gamma
//! and Pochhammer symbols.

mod complex;
mod dd;
pub mod gamma;
mod logsigned;

pub use complex::Complex;
pub use dd::{ParseRealError, Real};
pub use gamma::{
    gamma_sign, gamma_signed, log_gamma_complex, log_gamma_real, pochhammer, pochhammer_complex,
};
pub use logsigned::LogSigned;

/// Relative difference |a - b| / max(|a|, |b|), zero when both vanish.
pub fn rel_err(a: Real, b: Real) -> Real {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        Real::ZERO
    } else {
        (a - b).abs() / scale
    }
}

/// Parse a decimal string, mapping failures to a domain error.
pub fn parse_real(s: &str) -> crate::error::Result<Real> {
    s.parse::<Real>().map_err(|e| crate::error::Error::Domain(e.to_string()))
}

/// Field operations shared by [`Real`] and [`Complex`], so that recurrences
/// and terminating series can be written once.
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_real(x: Real) -> Self;
    fn zero() -> Self {
        Self::from_real(Real::ZERO)
    }
    fn one() -> Self {
        Self::from_real(Real::ONE)
    }
    fn is_zero(&self) -> bool;
    /// Modulus as a real number.
    fn magnitude(&self) -> Real;
    /// `Some(k)` when the value is exactly the integer -k (k >= 0).
    fn as_nonpositive_integer(&self) -> Option<usize>;
}

impl Scalar for Real {
    fn from_real(x: Real) -> Real {
        x
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(*self)
    }
    fn magnitude(&self) -> Real {
        self.abs()
    }
    fn as_nonpositive_integer(&self) -> Option<usize> {
        if *self <= Real::ZERO && self.is_integer() {
            Some((-*self).to_f64() as usize)
        } else {
            None
        }
    }
}

impl Scalar for Complex {
    fn from_real(x: Real) -> Complex {
        Complex::from_real(x)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> Real {
        self.abs()
    }
    fn as_nonpositive_integer(&self) -> Option<usize> {
        if self.im.is_zero() {
            self.re.as_nonpositive_integer()
        } else {
            None
        }
    }
}
