use super::Real;
use std::fmt;
use std::ops::{Div, Mul, Neg};

/// A real number stored as sign and natural log of its magnitude.
///
/// Zero has sign 0 and a log magnitude of -inf.
#[derive(Clone, Copy, PartialEq)]
pub struct LogSigned {
    log_mag: Real,
    sign: i8,
}

impl LogSigned {
    pub const ZERO: LogSigned = LogSigned { log_mag: Real::from_parts(f64::NEG_INFINITY, 0.0), sign: 0 };
    pub const ONE: LogSigned = LogSigned { log_mag: Real::ZERO, sign: 1 };

    /// From a log magnitude and a sign; a zero sign yields the zero value.
    pub fn from_parts(log_mag: Real, sign: i8) -> LogSigned {
        if sign == 0 {
            LogSigned::ZERO
        } else {
            LogSigned { log_mag, sign: sign.signum() }
        }
    }

    pub fn from_real(x: Real) -> LogSigned {
        match x.signum_i8() {
            0 => LogSigned::ZERO,
            s => LogSigned { log_mag: x.abs().ln(), sign: s },
        }
    }

    /// exp(l) with positive sign.
    pub fn from_log(l: Real) -> LogSigned {
        LogSigned { log_mag: l, sign: 1 }
    }

    pub fn log_magnitude(self) -> Real {
        self.log_mag
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn to_real(self) -> Real {
        if self.sign == 0 {
            return Real::ZERO;
        }
        let m = self.log_mag.exp();
        if self.sign < 0 {
            -m
        } else {
            m
        }
    }

    pub fn abs(self) -> LogSigned {
        if self.sign == 0 {
            self
        } else {
            LogSigned { log_mag: self.log_mag, sign: 1 }
        }
    }

    pub fn recip(self) -> LogSigned {
        LogSigned { log_mag: -self.log_mag, sign: self.sign }
    }

    pub fn powi(self, n: i32) -> LogSigned {
        if n == 0 {
            return LogSigned::ONE;
        }
        let sign = if self.sign < 0 && n % 2 == 0 { 1 } else { self.sign };
        LogSigned::from_parts(self.log_mag * Real::from_i64(n as i64), sign)
    }

    /// Multiply by a plain real.
    pub fn scale(self, x: Real) -> LogSigned {
        self * LogSigned::from_real(x)
    }

    /// Sum of two signed logs, computed as a log-sum-exp.
    pub fn add(self, other: LogSigned) -> LogSigned {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag >= other.log_mag { (self, other) } else { (other, self) };
        let ratio = (small.log_mag - big.log_mag).exp();
        let factor = if big.sign == small.sign { Real::ONE + ratio } else { Real::ONE - ratio };
        if factor.is_zero() {
            return LogSigned::ZERO;
        }
        LogSigned { log_mag: big.log_mag + factor.abs().ln(), sign: big.sign * factor.signum_i8() }
    }

    /// |self/other - 1|, exact for nearby values of the same sign.
    pub fn rel_diff(self, other: LogSigned) -> Real {
        if self.sign == 0 && other.sign == 0 {
            return Real::ZERO;
        }
        if self.sign != other.sign {
            return (self.to_real() - other.to_real()).abs() / other.to_real().abs();
        }
        (self.log_mag - other.log_mag).exp_m1().abs()
    }
}

impl Mul for LogSigned {
    type Output = LogSigned;
    fn mul(self, b: LogSigned) -> LogSigned {
        if self.sign == 0 || b.sign == 0 {
            return LogSigned::ZERO;
        }
        LogSigned { log_mag: self.log_mag + b.log_mag, sign: self.sign * b.sign }
    }
}

impl Div for LogSigned {
    type Output = LogSigned;
    fn div(self, b: LogSigned) -> LogSigned {
        self * b.recip()
    }
}

impl Neg for LogSigned {
    type Output = LogSigned;
    fn neg(self) -> LogSigned {
        LogSigned { log_mag: self.log_mag, sign: -self.sign }
    }
}

impl fmt::Debug for LogSigned {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            1 => "+",
            -1 => "-",
            _ => "0",
        };
        write!(f, "{s}exp({:?})", self.log_mag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_absorbs() {
        let z = LogSigned::from_real(Real::ZERO);
        assert!(z.is_zero());
        assert!((z * LogSigned::from_real(Real::new(5.0))).is_zero());
        assert_eq!(z.to_real(), Real::ZERO);
    }

    #[test]
    fn products_follow_signs() {
        let a = LogSigned::from_real(Real::new(-3.0));
        let b = LogSigned::from_real(Real::new(4.0));
        let p = a * b;
        assert_eq!(p.sign(), -1);
        assert!((p.to_real() + Real::new(12.0)).abs().to_f64() < 1e-29);
        assert!(((a / b).to_real() + Real::new(0.75)).abs().to_f64() < 1e-30);
    }

    #[test]
    fn addition_with_cancellation() {
        let a = LogSigned::from_real(Real::new(5.0));
        let b = LogSigned::from_real(Real::new(-2.0));
        assert!((a.add(b).to_real() - Real::new(3.0)).abs().to_f64() < 1e-29);
        assert!(a.add(-a).is_zero());
    }

    #[test]
    fn huge_magnitudes_survive() {
        let big = LogSigned::from_log(Real::new(5000.0));
        let q = (big * big) / big;
        assert!(q.rel_diff(big).to_f64() < 1e-28);
    }

    #[test]
    fn odd_power_keeps_sign() {
        let a = LogSigned::from_real(Real::new(-2.0));
        assert_eq!(a.powi(3).sign(), -1);
        assert_eq!(a.powi(2).sign(), 1);
    }
}
