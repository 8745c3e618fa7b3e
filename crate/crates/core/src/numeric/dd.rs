//! Double-double real arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi)/2`, giving roughly 106 bits (about 31 decimal digits).
//! The algorithms follow the classic error-free transformations
//! (Knuth two-sum, FMA two-product) and the argument reductions used by the
//! QD library.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

/// Extended-precision real scalar (double-double).
#[derive(Clone, Copy, Default)]
pub struct Real {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

/// Reciprocal factorials 1/k! for k = 3..=17, used by the exp kernel.
fn inv_fact() -> &'static [Real; 15] {
    static TABLE: OnceLock<[Real; 15]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [Real::ZERO; 15];
        let mut f = Real::new(2.0);
        for (i, slot) in t.iter_mut().enumerate() {
            f *= Real::new((i + 3) as f64);
            *slot = Real::ONE / f;
        }
        t
    })
}

impl Real {
    pub const ZERO: Real = Real { hi: 0.0, lo: 0.0 };
    pub const ONE: Real = Real { hi: 1.0, lo: 0.0 };
    pub const TWO: Real = Real { hi: 2.0, lo: 0.0 };
    pub const HALF: Real = Real { hi: 0.5, lo: 0.0 };
    pub const PI: Real = Real { hi: 3.141_592_653_589_793, lo: 1.224_646_799_147_353_2e-16 };
    pub const TWO_PI: Real = Real { hi: 6.283_185_307_179_586, lo: 2.449_293_598_294_706_4e-16 };
    pub const FRAC_PI_2: Real = Real { hi: 1.570_796_326_794_896_6, lo: 6.123_233_995_736_766e-17 };
    pub const LN_2: Real = Real { hi: 6.931_471_805_599_453e-1, lo: 2.319_046_813_846_299_6e-17 };
    pub const LN_10: Real = Real { hi: 2.302_585_092_994_046, lo: -2.170_756_223_382_249_2e-16 };
    pub const NAN: Real = Real { hi: f64::NAN, lo: f64::NAN };
    pub const INFINITY: Real = Real { hi: f64::INFINITY, lo: 0.0 };
    /// Relative machine epsilon of the representation (2^-104).
    pub const EPSILON: f64 = 4.930_380_657_631_324e-32;

    /// Build from a pre-normalised pair. Used for constants.
    pub const fn from_parts(hi: f64, lo: f64) -> Real {
        Real { hi, lo }
    }

    #[inline]
    pub fn new(x: f64) -> Real {
        Real { hi: x, lo: 0.0 }
    }

    /// Exact conversion of an integer (all of i64 is representable).
    pub fn from_i64(n: i64) -> Real {
        let hi = n as f64;
        // remainder is exact in i128
        let rem = (n as i128 - hi as i128) as f64;
        let (h, l) = quick_two_sum(hi, rem);
        Real { hi: h, lo: l }
    }

    pub fn from_usize(n: usize) -> Real {
        Real::from_i64(n as i64)
    }

    /// Exact ratio num/den rounded to double-double.
    pub fn ratio(num: i64, den: i64) -> Real {
        Real::from_i64(num) / Real::from_i64(den)
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0
    }

    /// -1, 0 or +1.
    pub fn signum_i8(self) -> i8 {
        if self.hi > 0.0 {
            1
        } else if self.hi < 0.0 {
            -1
        } else {
            0
        }
    }

    #[inline]
    pub fn abs(self) -> Real {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiply by 2^k exactly.
    #[inline]
    pub fn ldexp(self, k: i32) -> Real {
        let s = 2f64.powi(k);
        if s.is_finite() && s != 0.0 {
            Real { hi: self.hi * s, lo: self.lo * s }
        } else {
            // split the scaling to stay within the exponent range
            let h = k / 2;
            let s1 = 2f64.powi(h);
            let s2 = 2f64.powi(k - h);
            Real { hi: self.hi * s1 * s2, lo: self.lo * s1 * s2 }
        }
    }

    pub fn sqr(self) -> Real {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo;
        let (h, l) = quick_two_sum(p, e);
        Real { hi: h, lo: l }
    }

    pub fn recip(self) -> Real {
        Real::ONE / self
    }

    pub fn floor(self) -> Real {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Real { hi: h, lo: l }
        } else {
            Real { hi, lo: 0.0 }
        }
    }

    pub fn ceil(self) -> Real {
        -(-self).floor()
    }

    /// Round half away from zero.
    pub fn round(self) -> Real {
        if self.is_sign_negative() {
            -((-self) + Real::HALF).floor()
        } else {
            (self + Real::HALF).floor()
        }
    }

    pub fn trunc(self) -> Real {
        if self.is_sign_negative() {
            self.ceil()
        } else {
            self.floor()
        }
    }

    /// True when the value is an integer.
    pub fn is_integer(self) -> bool {
        self.is_finite() && self.floor() == self
    }

    pub fn max(self, other: Real) -> Real {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Real) -> Real {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn sqrt(self) -> Real {
        if self.hi == 0.0 {
            return Real::ZERO;
        }
        if self.hi < 0.0 {
            return Real::NAN;
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let corr = (self - Real::new(ax).sqr()).hi * (x * 0.5);
        let (h, l) = two_sum(ax, corr);
        Real { hi: h, lo: l }
    }

    /// Natural exponential.
    pub fn exp(self) -> Real {
        if self.hi.is_nan() {
            return Real::NAN;
        }
        if self.hi > 709.7 {
            return Real::INFINITY;
        }
        if self.hi < -745.0 {
            return Real::ZERO;
        }
        if self.is_zero() {
            return Real::ONE;
        }
        let k = (self.hi / Real::LN_2.hi + 0.5).floor();
        // r = (x - k ln2) / 512
        let r = (self - Real::LN_2 * Real::new(k)).ldexp(-9);
        // expm1 of r by Taylor
        let mut s = r + r.sqr().ldexp(-1);
        let mut p = r.sqr() * r;
        let thresh = 1e-34 * r.abs().hi.max(1e-300);
        for c in inv_fact().iter() {
            let t = p * *c;
            s += t;
            if t.abs().hi < thresh {
                break;
            }
            p *= r;
        }
        // (1+s)^(2^9) - 1 via repeated s <- 2s + s^2
        for _ in 0..9 {
            s = s.ldexp(1) + s.sqr();
        }
        (s + Real::ONE).ldexp(k as i32)
    }

    /// exp(x) - 1 with full relative accuracy near zero.
    pub fn exp_m1(self) -> Real {
        if self.abs().hi > 0.5 {
            return self.exp() - Real::ONE;
        }
        let mut s = self;
        let mut term = self;
        let mut k = 1.0;
        loop {
            k += 1.0;
            term = term * self / Real::new(k);
            s += term;
            if term.abs().hi <= 1e-34 * s.abs().hi || term.is_zero() {
                break;
            }
        }
        s
    }

    /// Natural logarithm; NaN for negative input, -inf at zero.
    pub fn ln(self) -> Real {
        if self.hi < 0.0 || self.hi.is_nan() {
            return Real::NAN;
        }
        if self.hi == 0.0 {
            return -Real::INFINITY;
        }
        if self.hi.is_infinite() {
            return Real::INFINITY;
        }
        if self == Real::ONE {
            return Real::ZERO;
        }
        // one Newton step x <- x + a e^{-x} - 1 doubles the f64 accuracy
        let x = Real::new(self.hi.ln());
        x + self * (-x).exp() - Real::ONE
    }

    pub fn log10(self) -> Real {
        self.ln() / Real::LN_10
    }

    /// x^y for x > 0 (x = 0 gives 0 for y > 0).
    pub fn powr(self, y: Real) -> Real {
        if self.is_zero() {
            return if y.hi > 0.0 { Real::ZERO } else { Real::INFINITY };
        }
        (y * self.ln()).exp()
    }

    pub fn powi(self, n: i32) -> Real {
        if n == 0 {
            return Real::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Real::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Taylor kernels for |r| <= pi/4.
    fn sin_cos_kernel(r: Real) -> (Real, Real) {
        let r2 = r.sqr();
        let thresh = 1e-34;
        // sin
        let mut term = r;
        let mut s = r;
        let mut k = 1.0;
        loop {
            term = -(term * r2) / Real::new((k + 1.0) * (k + 2.0));
            k += 2.0;
            s += term;
            if term.abs().hi < thresh {
                break;
            }
        }
        // cos
        let mut term = Real::ONE;
        let mut c = Real::ONE;
        let mut k = 0.0;
        loop {
            term = -(term * r2) / Real::new((k + 1.0) * (k + 2.0));
            k += 2.0;
            c += term;
            if term.abs().hi < thresh {
                break;
            }
        }
        (s, c)
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(self) -> (Real, Real) {
        if self.is_zero() {
            return (Real::ZERO, Real::ONE);
        }
        // reduce modulo 2 pi first, then by quadrant
        let z = (self / Real::TWO_PI).round();
        let r = self - Real::TWO_PI * z;
        let q = (r / Real::FRAC_PI_2).round();
        let t = r - Real::FRAC_PI_2 * q;
        let (s, c) = Real::sin_cos_kernel(t);
        match (q.to_f64() as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Real {
        self.sin_cos().0
    }

    pub fn cos(self) -> Real {
        self.sin_cos().1
    }

    pub fn tan(self) -> Real {
        let (s, c) = self.sin_cos();
        s / c
    }

    /// sin(pi x) with exact reduction of the argument modulo 2.
    pub fn sin_pi(self) -> Real {
        let n = self.round();
        let f = self - n;
        let s = (f * Real::PI).sin();
        if (n.to_f64() as i64).rem_euclid(2) == 0 {
            s
        } else {
            -s
        }
    }

    pub fn sinh(self) -> Real {
        if self.abs().hi < 0.5 {
            let e = self.exp_m1();
            // sinh = (e^x - e^-x)/2 = (em1 + em1/(1+em1))/2
            (e + e / (e + Real::ONE)).ldexp(-1)
        } else {
            let e = self.exp();
            (e - e.recip()).ldexp(-1)
        }
    }

    pub fn cosh(self) -> Real {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }

    /// Four-quadrant arctangent.
    pub fn atan2(self, x: Real) -> Real {
        let y = self;
        if x.is_zero() {
            if y.is_zero() {
                return Real::ZERO;
            }
            return if y.hi > 0.0 { Real::FRAC_PI_2 } else { -Real::FRAC_PI_2 };
        }
        if y.is_zero() {
            return if x.hi > 0.0 { Real::ZERO } else { Real::PI };
        }
        if x == y {
            return if y.hi > 0.0 { Real::PI.ldexp(-2) } else { -Real::PI.ldexp(-2) * Real::new(3.0) };
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let xx = x / r;
        let yy = y / r;
        let mut z = Real::new(y.hi.atan2(x.hi));
        let (sz, cz) = z.sin_cos();
        if xx.abs().hi > yy.abs().hi {
            z += (yy - sz) / cz;
        } else {
            z -= (xx - cz) / sz;
        }
        z
    }

    pub fn atan(self) -> Real {
        self.atan2(Real::ONE)
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci_string(self, digits: usize) -> String {
        let digits = digits.clamp(1, 34);
        if self.is_nan() {
            return "NaN".to_string();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.is_zero() {
            return format!("{}e0", "0.".to_string() + &"0".repeat(digits - 1))
                .replace(".e", "e");
        }
        let neg = self.is_sign_negative();
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let mut r = x / Real::new(10.0).powi(e);
        while r.hi >= 10.0 {
            r /= Real::new(10.0);
            e += 1;
        }
        while r.hi < 1.0 {
            r *= Real::new(10.0);
            e -= 1;
        }
        // generate one guard digit then round
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let mut d = r.hi.floor();
            if d < 0.0 {
                d = 0.0;
            }
            if d > 9.0 {
                d = 9.0;
            }
            ds.push(d as u8);
            r = (r - Real::new(d)) * Real::new(10.0);
        }
        let guard = ds.pop().unwrap();
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&e.to_string());
        s
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(32))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        write!(f, "{}", self.to_sci_string(digits))
    }
}

/// Error from parsing a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRealError(pub String);

impl fmt::Display for ParseRealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse '{}' as a real number", self.0)
    }
}

impl std::error::Error for ParseRealError {}

impl FromStr for Real {
    type Err = ParseRealError;

    /// Parses `[+-]digits[.digits][(e|E)[+-]digits]` exactly up to ~31 digits.
    fn from_str(s: &str) -> Result<Real, ParseRealError> {
        let err = || ParseRealError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = body[i + 1..].parse().map_err(|_| err())?;
                (&body[..i], e)
            }
            None => (body, 0),
        };
        let mut value = Real::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut seen_digit = false;
        for ch in mant.chars() {
            match ch {
                '0'..='9' => {
                    seen_digit = true;
                    value = value * Real::new(10.0) + Real::new((ch as u8 - b'0') as f64);
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                '_' => {}
                _ => return Err(err()),
            }
        }
        if !seen_digit {
            return Err(err());
        }
        let e = exp - frac_digits;
        let p = Real::new(10.0).powi(e.abs());
        let v = if e >= 0 { value * p } else { value / p };
        Ok(if neg { -v } else { v })
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Real {
        Real::new(x)
    }
}

impl From<i32> for Real {
    fn from(x: i32) -> Real {
        Real::new(x as f64)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    #[inline]
    fn neg(self) -> Real {
        Real { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Real {
    type Output = Real;
    #[inline]
    fn add(self, b: Real) -> Real {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Real { hi: s1, lo: 0.0 };
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (h, l) = quick_two_sum(s1, s2);
        Real { hi: h, lo: l }
    }
}

impl Sub for Real {
    type Output = Real;
    #[inline]
    fn sub(self, b: Real) -> Real {
        self + (-b)
    }
}

impl Mul for Real {
    type Output = Real;
    #[inline]
    fn mul(self, b: Real) -> Real {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Real { hi: p, lo: 0.0 };
        }
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Real { hi: h, lo: l }
    }
}

impl Div for Real {
    type Output = Real;
    #[inline]
    fn div(self, b: Real) -> Real {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi.is_infinite() {
            return Real { hi: q1, lo: 0.0 };
        }
        let r = self - b * Real::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Real::new(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Real { hi: h, lo: l } + Real::new(q3)
    }
}

impl Rem for Real {
    type Output = Real;
    fn rem(self, b: Real) -> Real {
        self - b * (self / b).trunc()
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $f:ident $atr:ident $af:ident),*) => {$(
        impl $tr<f64> for Real {
            type Output = Real;
            #[inline]
            fn $f(self, b: f64) -> Real { $tr::$f(self, Real::new(b)) }
        }
        impl $tr<Real> for f64 {
            type Output = Real;
            #[inline]
            fn $f(self, b: Real) -> Real { $tr::$f(Real::new(self), b) }
        }
        impl $atr for Real {
            #[inline]
            fn $af(&mut self, b: Real) { *self = $tr::$f(*self, b); }
        }
        impl $atr<f64> for Real {
            #[inline]
            fn $af(&mut self, b: f64) { *self = $tr::$f(*self, Real::new(b)); }
        }
    )*};
}

scalar_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign,
            Mul mul MulAssign mul_assign, Div div DivAssign div_assign);

impl Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Real> for Real {
    fn sum<I: Iterator<Item = &'a Real>>(iter: I) -> Real {
        iter.fold(Real::ZERO, |a, b| a + *b)
    }
}

impl Product for Real {
    fn product<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::ONE, |a, b| a * b)
    }
}
