use skewgas::classical::WeightFamily;
use skewgas::numeric::{LogSigned, Real};
use skewgas::partition::{z_bruteforce, z_pfaffian, z_product, z_sweep, Route};

fn grid() -> Vec<Real> {
    [0.0, 0.5, 1.0, 2.0].iter().map(|&v| Real::new(v)).collect()
}

fn rel(a: LogSigned, b: Real) -> f64 {
    a.rel_diff(LogSigned::from_real(b)).to_f64()
}

#[test]
fn gaussian_single_pair_closed_form() {
    // one charge-2 particle plus two charge-1 particles: √π (2X² + 1)
    let g = WeightFamily::gaussian();
    for xv in [0.0, 1.0, 2.0, 3.5] {
        let x = Real::new(xv);
        let expect = Real::PI.sqrt() * (Real::TWO * x.sqr() + Real::ONE);
        assert!(rel(z_pfaffian(&g, x, 1).unwrap().value, expect) < 1e-8);
        assert!(rel(z_product(&g, x, 1).unwrap().value, expect) < 1e-8);
        assert!(rel(z_bruteforce(&g, x, 1, false).unwrap().value, expect) < 1e-5);
    }
}

#[test]
fn uniform_jacobi_single_pair() {
    // w4 = 1 - z² and ∫∫_{y<x} (x - y) w1(x) w1(y) = 4 with the arcsine β=1 weight
    let w = WeightFamily::jacobi(Real::ZERO, Real::ZERO).unwrap();
    for xv in [0.0, 0.5, 2.0] {
        let x = Real::new(xv);
        let expect = Real::new(4.0) * x.sqr() + Real::ratio(4, 3);
        for r in [z_pfaffian(&w, x, 1), z_product(&w, x, 1), z_bruteforce(&w, x, 1, false)] {
            let r = r.unwrap();
            assert!(rel(r.value, expect) < r.route.tolerance(), "{r:?}");
        }
    }
}

#[test]
fn pfaffian_and_product_agree_for_reference_families() {
    for w in WeightFamily::reference_set() {
        for n in 1..=4 {
            for x in grid() {
                let pf = z_pfaffian(&w, x, n).unwrap();
                let prod = z_product(&w, x, n).unwrap();
                let d = pf.value.rel_diff(prod.value).to_f64();
                assert!(d < 1e-8, "{w} N={n} X={x:?}: {d:e}");
                assert_eq!(pf.value.sign(), 1);
            }
        }
    }
}

#[test]
fn brute_force_single_pair_all_families() {
    for w in WeightFamily::reference_set() {
        let pts = z_sweep(&w, &grid(), 1, &Route::ALL, false).unwrap();
        for p in pts {
            assert!(p.agrees(), "{w} {p:?}");
        }
    }
}

#[test]
fn brute_force_two_pairs_all_families() {
    // the slow path: the (4,0) sector is a four-dimensional integral
    for w in WeightFamily::reference_set() {
        for x in grid() {
            let bf = z_bruteforce(&w, x, 2, true).unwrap();
            let prod = z_product(&w, x, 2).unwrap();
            let d = bf.value.rel_diff(prod.value).to_f64();
            assert!(d < Route::BruteForce.tolerance(), "{w} X={x:?}: {d:e}");
            assert!(bf.error_estimate.to_f64() < 1e-5);
        }
    }
}

#[test]
fn z_is_a_polynomial_in_x_squared() {
    // Z_N has degree N in X²: N+1 samples determine it
    for w in WeightFamily::reference_set() {
        let n = 3;
        let t: Vec<Real> = (0..=n + 1).map(|k| Real::new(0.3 * k as f64)).collect();
        let z: Vec<Real> = t.iter().map(|&tk| z_product(&w, tk.sqrt(), n).unwrap().value.to_real()).collect();
        let target = t[n + 1];
        let mut pred = Real::ZERO;
        for i in 0..=n {
            let mut b = Real::ONE;
            for j in 0..=n {
                if j != i {
                    b *= (target - t[j]) / (t[i] - t[j]);
                }
            }
            pred += b * z[i];
        }
        assert!(((pred - z[n + 1]) / z[n + 1]).abs().to_f64() < 1e-10, "{w}");
    }
}

#[test]
fn even_in_x_and_increasing_in_x_squared() {
    for w in WeightFamily::reference_set() {
        let mut last = Real::ZERO;
        for xv in [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
            let x = Real::new(xv);
            let plus = z_product(&w, x, 3).unwrap().value;
            let minus = z_product(&w, -x, 3).unwrap().value;
            // equal up to rounding in the last double-double digit
            assert!(plus.rel_diff(minus).to_f64() < 1e-28, "{w} X={xv}");
            let v = plus.to_real();
            assert!(v > last, "{w} X={xv}");
            last = v;
        }
    }
}

#[test]
fn cauchy_guard_limits_n() {
    let w = WeightFamily::gencauchy(Real::new(5.0), Real::ZERO).unwrap();
    assert!(z_product(&w, Real::ONE, 1).is_ok());
    assert!(z_product(&w, Real::ONE, 2).is_err());
    assert!(z_pfaffian(&w, Real::ONE, 2).is_err());
}
