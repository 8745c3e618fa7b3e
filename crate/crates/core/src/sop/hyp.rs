use crate::error::{Error, Result};
use crate::numeric::{Real, Scalar};

/// Terminating generalized hypergeometric sum
/// Σ_{k=0}^{j} ∏(a_i)_k / ∏(b_i)_k · x^k / k!,
/// where -j is the numerator parameter that is a non-positive integer
/// (the smallest such j if several are).
///
/// A denominator equal to -m with m < j would divide by zero before the
/// series stops and is reported as a pole.
pub fn hyp_terminating<T: Scalar>(num: &[T], den: &[T], arg: T) -> Result<T> {
    let j = num
        .iter()
        .filter_map(|a| a.as_nonpositive_integer())
        .min()
        .ok_or(Error::NonTerminating)?;
    if let Some(m) = den.iter().filter_map(|b| b.as_nonpositive_integer()).filter(|&m| m < j).min() {
        return Err(Error::HypergeometricPole(m));
    }
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..j {
        let kk = T::from_real(Real::from_usize(k));
        let mut ratio = arg / T::from_real(Real::from_usize(k + 1));
        for &a in num {
            ratio = ratio * (a + kk);
        }
        for &b in den {
            ratio = ratio / (b + kk);
        }
        term = term * ratio;
        sum = sum + term;
    }
    Ok(sum)
}
