//! Complex numbers over [`Real`].

use super::Real;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: Real::ZERO, im: Real::ZERO };
    pub const ONE: Complex = Complex { re: Real::ONE, im: Real::ZERO };
    pub const I: Complex = Complex { re: Real::ZERO, im: Real::ONE };

    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Complex {
        Complex { re, im: Real::ZERO }
    }

    pub fn conj(self) -> Complex {
        Complex { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> Real {
        self.re.sqr() + self.im.sqr()
    }

    /// Modulus, scaled to avoid overflow.
    pub fn abs(self) -> Real {
        let a = self.re.abs();
        let b = self.im.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return Real::ZERO;
        }
        let r = small / big;
        big * (Real::ONE + r.sqr()).sqrt()
    }

    pub fn arg(self) -> Real {
        self.im.atan2(self.re)
    }

    pub fn scale(self, s: Real) -> Complex {
        Complex { re: self.re * s, im: self.im * s }
    }

    /// Multiply by i^k.
    pub fn mul_i_pow(self, k: i64) -> Complex {
        match k.rem_euclid(4) {
            0 => self,
            1 => Complex { re: -self.im, im: self.re },
            2 => -self,
            _ => Complex { re: self.im, im: -self.re },
        }
    }

    /// Principal logarithm.
    pub fn ln(self) -> Complex {
        Complex { re: self.abs().ln(), im: self.arg() }
    }

    pub fn exp(self) -> Complex {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Complex { re: m * c, im: m * s }
    }

    pub fn sin(self) -> Complex {
        let (s, c) = self.re.sin_cos();
        Complex { re: s * self.im.cosh(), im: c * self.im.sinh() }
    }

    pub fn recip(self) -> Complex {
        Complex::ONE / self
    }

    pub fn is_real(self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl From<Real> for Complex {
    fn from(r: Real) -> Complex {
        Complex::from_real(r)
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, b: Complex) -> Complex {
        Complex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, b: Complex) -> Complex {
        Complex { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, b: Complex) -> Complex {
        Complex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Complex {
    type Output = Complex;
    /// Smith's algorithm.
    fn div(self, b: Complex) -> Complex {
        if b.re.abs() >= b.im.abs() {
            let r = b.im / b.re;
            let d = b.re + b.im * r;
            Complex { re: (self.re + self.im * r) / d, im: (self.im - self.re * r) / d }
        } else {
            let r = b.re / b.im;
            let d = b.re * r + b.im;
            Complex { re: (self.re * r + self.im) / d, im: (self.im * r - self.re) / d }
        }
    }
}

impl Add<Real> for Complex {
    type Output = Complex;
    fn add(self, b: Real) -> Complex {
        Complex { re: self.re + b, im: self.im }
    }
}

impl Sub<Real> for Complex {
    type Output = Complex;
    fn sub(self, b: Real) -> Complex {
        Complex { re: self.re - b, im: self.im }
    }
}

impl Mul<Real> for Complex {
    type Output = Complex;
    fn mul(self, b: Real) -> Complex {
        self.scale(b)
    }
}

impl Div<Real> for Complex {
    type Output = Complex;
    fn div(self, b: Real) -> Complex {
        Complex { re: self.re / b, im: self.im / b }
    }
}

impl AddAssign for Complex {
    fn add_assign(&mut self, b: Complex) {
        *self = *self + b;
    }
}

impl SubAssign for Complex {
    fn sub_assign(&mut self, b: Complex) {
        *self = *self - b;
    }
}

impl MulAssign for Complex {
    fn mul_assign(&mut self, b: Complex) {
        *self = *self * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(Real::new(re), Real::new(im))
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = c(1.5, -2.0);
        let b = c(-0.25, 3.0);
        let d = (a * b) / b - a;
        assert!(d.abs().to_f64() < 1e-30);
    }

    #[test]
    fn exp_of_log() {
        let z = c(-3.0, 0.5);
        let d = z.ln().exp() - z;
        assert!(d.abs().to_f64() < 1e-29);
    }

    #[test]
    fn euler_identity() {
        let e = Complex::new(Real::ZERO, Real::PI).exp() + Complex::ONE;
        assert!(e.abs().to_f64() < 1e-31);
    }

    #[test]
    fn powers_of_i() {
        let z = c(2.0, 1.0);
        assert_eq!(z.mul_i_pow(1), z * Complex::I);
        assert_eq!(z.mul_i_pow(-1), z * Complex::I.conj());
        assert_eq!(z.mul_i_pow(6), -z);
    }
}
