use proptest::prelude::*;
use skewgas::numeric::{gamma_signed, log_gamma_complex, log_gamma_real, Complex, Real};

fn r(x: f64) -> Real {
    Real::new(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn recurrence_on_the_positive_axis(x in 0.01f64..60.0) {
        // ln Γ(x+1) = ln x + ln Γ(x)
        let x = r(x);
        let lhs = log_gamma_real(x + Real::ONE).unwrap();
        let rhs = x.ln() + log_gamma_real(x).unwrap();
        let scale = lhs.abs().max(Real::ONE);
        prop_assert!(((lhs - rhs) / scale).abs().to_f64() < 1e-12);
    }

    #[test]
    fn legendre_duplication(x in 0.05f64..40.0) {
        // Γ(x) Γ(x + 1/2) = 2^{1-2x} √π Γ(2x)
        let x = r(x);
        let lhs = log_gamma_real(x).unwrap() + log_gamma_real(x + Real::HALF).unwrap();
        let rhs = (Real::ONE - Real::TWO * x) * Real::LN_2 + Real::PI.ln() * Real::HALF + log_gamma_real(Real::TWO * x).unwrap();
        let scale = lhs.abs().max(Real::ONE);
        prop_assert!(((lhs - rhs) / scale).abs().to_f64() < 1e-12);
    }

    #[test]
    fn reflection_off_the_integers(x in -7.9f64..7.9) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        // Γ(x) Γ(1 - x) = π / sin(πx), signs included
        let x = r(x);
        let prod = (gamma_signed(x).unwrap() * gamma_signed(Real::ONE - x).unwrap()).to_real();
        let expect = Real::PI / x.sin_pi();
        prop_assert!(((prod - expect) / expect).abs().to_f64() < 1e-12);
    }

    #[test]
    fn complex_recurrence(re in 0.1f64..15.0, im in -15.0f64..15.0) {
        let z = Complex::new(r(re), r(im));
        let lhs = log_gamma_complex(z + Real::ONE).unwrap();
        let rhs = z.ln() + log_gamma_complex(z).unwrap();
        let d = lhs - rhs;
        let scale = lhs.abs().max(Real::ONE);
        // imaginary parts may differ by a multiple of 2π
        let im_turns = (d.im / Real::TWO_PI).round();
        let im_d = d.im - im_turns * Real::TWO_PI;
        prop_assert!((d.re / scale).abs().to_f64() < 1e-12);
        prop_assert!((im_d / scale).abs().to_f64() < 1e-12);
    }
}

#[test]
fn modulus_of_gamma_at_one_plus_i() {
    // |Γ(1+i)|² = π / sinh π
    let lg = log_gamma_complex(Complex::new(Real::ONE, Real::ONE)).unwrap();
    let expect = (Real::PI / Real::PI.sinh()).sqrt();
    let got = lg.re.exp();
    assert!(((got - expect) / expect).abs().to_f64() < 1e-12);
}

#[test]
fn half_integer_values() {
    // Γ(1/2) = √π, Γ(5/2) = 3√π/4, Γ(-1/2) = -2√π
    let sp = Real::PI.sqrt();
    for (x, want) in [(0.5, sp), (2.5, sp * r(0.75)), (-0.5, -(sp * Real::TWO))] {
        let got = gamma_signed(r(x)).unwrap().to_real();
        assert!(((got - want) / want).abs().to_f64() < 1e-28, "x = {x}");
    }
}

#[test]
fn poles_are_reported() {
    for x in [0.0, -1.0, -4.0] {
        assert!(log_gamma_real(r(x)).is_err());
    }
    assert!(log_gamma_complex(Complex::new(r(-2.0), Real::ZERO)).is_err());
}
