use skewgas::classical::{beta1_gamma_ratio, zeta, WeightFamily};
use skewgas::moments::{MomentEngine, DEFAULT_NODES};
use skewgas::numeric::{rel_err, LogSigned, Real};
use skewgas::skewlinalg::{extract_sop, pfaffian};
use skewgas::sop::{build_q, coefficient_table, SopFamily, Source};

fn grid() -> Vec<Real> {
    [0.0, 0.5, 1.0, 2.0].iter().map(|&v| Real::new(v)).collect()
}

#[test]
fn closed_form_matches_recurrence() {
    for w in WeightFamily::reference_set() {
        for xv in [0.5, 1.0, 2.0] {
            let x = Real::new(xv);
            let rec = coefficient_table(&w, x, 6, Source::Recurrence).unwrap();
            let cf = coefficient_table(&w, x, 6, Source::ClosedForm).unwrap();
            for j in 0..=6 {
                assert!((cf.alpha[j] / rec.alpha[j] - Real::ONE).abs().to_f64() < 1e-12, "{w} X={xv} j={j}");
                assert!(rel_err(cf.xi[j] * cf.c[j], cf.alpha[j]).to_f64() < 1e-12, "{w} X={xv} j={j}");
                assert!(rel_err(rec.xi[j] * rec.c[j], rec.alpha[j]).to_f64() < 1e-12, "{w} X={xv} j={j}");
            }
        }
    }
}

#[test]
fn operator_and_moment_routes_give_the_same_polynomials() {
    for w in WeightFamily::reference_set() {
        for n in 1..=4 {
            let engine = MomentEngine::new(&w, 2 * n, DEFAULT_NODES).unwrap();
            for x in grid() {
                let op = build_q(&w, x, n).unwrap();
                let basis = extract_sop(&engine.moment_matrix(x, n).unwrap()).unwrap();
                let mut mom = SopFamily::from_basis(&w, x, basis);
                mom.align_odd_gauge(&op);
                let scale = op.q.iter().fold(Real::ONE, |m, q| m.max(q.as_poly().max_abs_coeff()));
                let d = (mom.max_coeff_diff(&op) / scale).to_f64();
                assert!(d < 1e-8, "{w} N={n} X={x:?}: {d:e}");
                for (a, b) in op.u.iter().zip(&mom.u) {
                    assert!(rel_err(*a, *b).to_f64() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn constructed_family_is_skew_orthogonal() {
    for w in WeightFamily::reference_set() {
        for n in 1..=4 {
            let engine = MomentEngine::new(&w, 2 * n, DEFAULT_NODES).unwrap();
            for x in grid() {
                let fam = build_q(&w, x, n).unwrap();
                let g = fam.skew_gram(&engine).unwrap();
                let umax = fam.u.iter().fold(Real::ZERO, |m, u| m.max(u.abs()));
                for i in 0..2 * n {
                    for j in 0..2 * n {
                        if i / 2 != j / 2 {
                            assert!((g[i][j] / umax).abs().to_f64() < 1e-8, "{w} N={n} ({i},{j})");
                        }
                    }
                }
                for (k, &u) in fam.u.iter().enumerate() {
                    assert!(rel_err(g[2 * k][2 * k + 1], u).to_f64() < 1e-8);
                    assert!(u > Real::ZERO);
                }
            }
        }
    }
}

#[test]
fn norms_are_ratios_of_leading_pfaffians() {
    for w in WeightFamily::reference_set() {
        let engine = MomentEngine::new(&w, 8, DEFAULT_NODES).unwrap();
        for x in grid() {
            let m = engine.moment_matrix(x, 4).unwrap();
            let fam = build_q(&w, x, 4).unwrap();
            let mut prev = LogSigned::ONE;
            for (k, &u) in fam.u.iter().enumerate() {
                let tau = pfaffian(&m.leading(2 * k + 2));
                assert!(rel_err(u, (tau / prev).to_real()).to_f64() < 1e-8, "{w} k={k}");
                prev = tau;
            }
        }
    }
}

#[test]
fn gaussian_low_order_polynomials() {
    // by parity Q_0 = 1, Q_1 = z and u_0 = m_01 = √π (X² + 1/2)
    let g = WeightFamily::gaussian();
    for xv in [0.0, 1.0, 2.0] {
        let x = Real::new(xv);
        let fam = build_q(&g, x, 1).unwrap();
        assert_eq!(fam.q[0].coeffs(), &[Real::ONE]);
        assert!(fam.q[1].coeffs()[0].abs().to_f64() < 1e-28);
        let expect = Real::PI.sqrt() * (x.sqr() + Real::HALF);
        assert!(rel_err(fam.u[0], expect).to_f64() < 1e-25);
    }
}

#[test]
fn beta_one_operator_ratios_reproduce_zeta() {
    for w in WeightFamily::reference_set() {
        for j in 1..=6 {
            let got = beta1_gamma_ratio(&w, j).unwrap();
            assert!(rel_err(got, zeta(&w, j)).to_f64() < 1e-10, "{w} j={j}");
        }
    }
}
