//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false`, so `cargo test` runs `main`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewgas::classical::{beta1_gamma_ratio, monic_op_table, skew_data, zeta, WeightFamily};
use skewgas::error::Result;
use skewgas::moments::{MomentEngine, SkewMatrix, DEFAULT_NODES};
use skewgas::numeric::{gamma_signed, log_gamma_complex, log_gamma_real, rel_err, Complex, LogSigned, Real};
use skewgas::partition::{z_bruteforce, z_pfaffian, z_product};
use skewgas::poly::{linear_combine, Polynomial};
use skewgas::skewlinalg::{determinant, pfaffian};
use skewgas::sop::{build_q, coefficient_table, Source};

struct Outcome {
    worst: f64,
    tol: f64,
    /// wall-clock budget in seconds, if the criterion has one
    budget: Option<f64>,
}

fn r(x: f64) -> Real {
    Real::new(x)
}

fn rel(a: Real, b: Real) -> f64 {
    rel_err(a, b).to_f64()
}

fn grid() -> Vec<Real> {
    [0.0, 0.5, 1.0, 2.0].map(r).to_vec()
}

/// Residual ratio: each measured quantity divided by its own tolerance, so
/// that mixed tolerances fold into a single `worst <= 1` test.
fn gaussian_single_pair() -> Result<Outcome> {
    let g = WeightFamily::gaussian();
    let mut worst: f64 = 0.0;
    for xv in [0.0, 1.0, 2.0] {
        let x = r(xv);
        let expect = LogSigned::from_real(Real::PI.sqrt() * (Real::TWO * x.sqr() + Real::ONE));
        worst = worst.max(z_pfaffian(&g, x, 1)?.value.rel_diff(expect).to_f64() / 1e-8);
        worst = worst.max(z_product(&g, x, 1)?.value.rel_diff(expect).to_f64() / 1e-8);
        worst = worst.max(z_bruteforce(&g, x, 1, false)?.value.rel_diff(expect).to_f64() / 1e-5);
    }
    Ok(Outcome { worst, tol: 1.0, budget: Some(5.0) })
}

fn pfaffian_vs_product() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for w in WeightFamily::reference_set() {
        for n in 1..=4 {
            for x in grid() {
                let d = z_pfaffian(&w, x, n)?.value.rel_diff(z_product(&w, x, n)?.value);
                worst = worst.max(d.to_f64());
            }
        }
    }
    Ok(Outcome { worst, tol: 1e-8, budget: Some(60.0) })
}

fn closed_forms() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for w in WeightFamily::reference_set() {
        for xv in [0.5, 1.0, 2.0] {
            let x = r(xv);
            let rec = coefficient_table(&w, x, 6, Source::Recurrence)?;
            let cf = coefficient_table(&w, x, 6, Source::ClosedForm)?;
            for j in 0..=6 {
                worst = worst.max((cf.alpha[j] / rec.alpha[j] - Real::ONE).abs().to_f64());
                worst = worst.max(rel(cf.xi[j] * cf.c[j], cf.alpha[j]));
                worst = worst.max(rel(rec.xi[j] * rec.c[j], rec.alpha[j]));
            }
        }
    }
    Ok(Outcome { worst, tol: 1e-12, budget: None })
}

fn skew_orthogonality() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for w in WeightFamily::reference_set() {
        for n in 1..=4 {
            let engine = MomentEngine::new(&w, 2 * n, DEFAULT_NODES)?;
            for x in grid() {
                let fam = build_q(&w, x, n)?;
                let g = fam.skew_gram(&engine)?;
                let umax = fam.u.iter().fold(Real::ZERO, |m, u| m.max(u.abs()));
                for i in 0..2 * n {
                    for j in 0..2 * n {
                        if i / 2 != j / 2 {
                            worst = worst.max((g[i][j] / umax).abs().to_f64());
                        }
                    }
                }
                let m = engine.moment_matrix(x, n)?;
                let mut prev = LogSigned::ONE;
                for (k, &u) in fam.u.iter().enumerate() {
                    let tau = pfaffian(&m.leading(2 * k + 2));
                    worst = worst.max(rel(u, (tau / prev).to_real()));
                    prev = tau;
                }
            }
        }
    }
    Ok(Outcome { worst, tol: 1e-8, budget: None })
}

fn structure_lines() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for w in WeightFamily::reference_set() {
        let sd = skew_data(&w, 3)?;
        let ps = monic_op_table(&w, 7)?;
        let engine = MomentEngine::new(&w, 8, DEFAULT_NODES)?;
        let zero = Polynomial::zero();
        let odd = |m: usize| {
            let prev = if m == 0 { &zero } else { ps[2 * m - 1].as_poly() };
            linear_combine(&[(Real::ONE, ps[2 * m + 1].as_poly()), (-sd.zeta[m], prev)])
        };
        for m in 0..=3 {
            for n in 0..=3 {
                let scale = (sd.h1[m].to_real() * sd.h1[n].to_real()).sqrt();
                let even_even = engine.inner1(ps[2 * m].as_poly(), ps[2 * n].as_poly())?;
                let odd_odd = engine.inner1(&odd(m), &odd(n))?;
                let mixed = engine.inner1(ps[2 * m].as_poly(), &odd(n))?;
                let mixed_want = if m == n { sd.h1[m].to_real() } else { Real::ZERO };
                let band = engine.inner4(ps[2 * m].as_poly(), ps[2 * n + 1].as_poly());
                let mut band_want = Real::ZERO;
                if m == n {
                    band_want += sd.h4[2 * n].to_real();
                }
                if m == n + 1 {
                    band_want -= sd.h4[2 * m - 1].to_real();
                }
                let s4 = sd.h4[2 * n].to_real().max(sd.h4[2 * m].to_real());
                for v in [even_even / scale, odd_odd / scale, (mixed - mixed_want) / scale, (band - band_want) / s4] {
                    worst = worst.max(v.abs().to_f64());
                }
            }
        }
    }
    Ok(Outcome { worst, tol: 1e-9, budget: None })
}

fn operator_ratios() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for w in WeightFamily::reference_set() {
        for j in 1..=6 {
            worst = worst.max(rel(beta1_gamma_ratio(&w, j)?, zeta(&w, j)));
        }
    }
    Ok(Outcome { worst, tol: 1e-10, budget: None })
}

fn pfaffian_suite() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let dim = 2 + 2 * (k % 6);
        let a = SkewMatrix::from_upper(dim, |_, _| r(rng.gen_range(-1.0..1.0)));
        let pf = pfaffian(&a);
        worst = worst.max((pf * pf).rel_diff(determinant(&a.rows())).to_f64() / 1e-10);
    }
    for _ in 0..50 {
        let a = SkewMatrix::from_upper(4, |_, _| r(rng.gen_range(-1.0..1.0)));
        let g = |i, j| a.get(i, j);
        let expect = g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);
        let d = (pfaffian(&a).to_real() - expect).abs().to_f64() / expect.abs().to_f64().max(1.0);
        worst = worst.max(d / 1e-14);
    }
    Ok(Outcome { worst, tol: 1.0, budget: None })
}

fn gamma_suite() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut push = |a: Real, b: Real| worst = worst.max(((a - b) / a.abs().max(Real::ONE)).abs().to_f64());
    for k in 1..=80 {
        let x = r(0.37 * k as f64 - 0.2);
        push(log_gamma_real(x + Real::ONE)?, x.ln() + log_gamma_real(x)?);
        push(
            log_gamma_real(x)? + log_gamma_real(x + Real::HALF)?,
            (Real::ONE - Real::TWO * x) * Real::LN_2 + Real::HALF * Real::PI.ln() + log_gamma_real(Real::TWO * x)?,
        );
    }
    for k in 0..60 {
        let x = r(-7.55 + 0.25 * k as f64);
        let prod = (gamma_signed(x)? * gamma_signed(Real::ONE - x)?).to_real();
        let expect = Real::PI / x.sin_pi();
        push(Real::ONE, Real::ONE + (prod - expect) / expect);
    }
    let modulus = log_gamma_complex(Complex::new(Real::ONE, Real::ONE))?.re.exp();
    push(Real::ONE, Real::ONE + (modulus - (Real::PI / Real::PI.sinh()).sqrt()) / modulus);
    Ok(Outcome { worst, tol: 1e-12, budget: None })
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 8] = [
        ("Gaussian N=1 closed form on pf, prod, bf", gaussian_single_pair),
        ("pf vs prod, reference families, N<=4", pfaffian_vs_product),
        ("closed-form vs recurrence coefficients, xi c = alpha", closed_forms),
        ("skew orthogonality and u_n = tau ratio", skew_orthogonality),
        ("four classical skew relations, m,n<=3", structure_lines),
        ("operator-route gamma ratio = zeta", operator_ratios),
        ("Pfaffian suite", pfaffian_suite),
        ("Gamma identities", gamma_suite),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match result {
            Ok(o) => {
                let in_time = o.budget.map_or(true, |b| secs < b);
                let budget = o.budget.map(|b| format!(", budget {b:.0}s")).unwrap_or_default();
                (o.worst <= o.tol && in_time, format!("worst {:.3e} vs tol {:.1e}, {secs:.2}s{budget}", o.worst, o.tol))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!("criterion {}: {} {name} ({detail})", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
