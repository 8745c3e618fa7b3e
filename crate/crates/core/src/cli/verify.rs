//! The invariant suite behind `skewgas verify`.
//!
//! Every check reduces to one residual compared against a fixed tolerance.
//! A check that cannot be evaluated at all reports a NaN residual and the
//! library error as its note.

use crate::classical::{beta1_gamma_ratio, monic_op_table, skew_data, zeta, WeightFamily};
use crate::error::Result;
use crate::moments::{moment_matrix_with_nodes, MomentEngine};
use crate::numeric::{rel_err, LogSigned, Real};
use crate::partition::{z_bruteforce, z_pfaffian_with_nodes, z_product, Route};
use crate::poly::{linear_combine, Polynomial};
use crate::skewlinalg::{extract_sop, pfaffian};
use crate::sop::{build_q_with_nodes, closed_form_alpha, closed_form_c, closed_form_xi, recurrence_alpha, SopFamily};
use crate::sop::{c_factor_table, recurrence_xi};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    /// error text when the residual could not be computed
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn check(name: &'static str, tolerance: f64, f: impl FnOnce() -> Result<f64>) -> Check {
    match f() {
        Ok(residual) => Check { name, residual, tolerance, note: None },
        Err(e) => Check { name, residual: f64::NAN, tolerance, note: Some(e.to_string()) },
    }
}

fn fold_max(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in it {
        let v = v?;
        // NaN must not be swallowed by f64::max
        worst = if v.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(v) };
    }
    Ok(worst)
}

fn rel(a: Real, b: Real) -> f64 {
    rel_err(a, b).to_f64()
}

/// Largest |G_ij| off the 2x2 diagonal blocks, scaled by max |u_n|.
pub fn off_block_residual(gram: &[Vec<Real>], u: &[Real]) -> f64 {
    let scale = u.iter().fold(Real::ZERO, |m, v| m.max(v.abs()));
    let mut worst = Real::ZERO;
    for (i, row) in gram.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i / 2 != j / 2 {
                worst = worst.max(v.abs());
            }
        }
    }
    (worst / scale).to_f64()
}

/// Relative gap between u_k and τ_{2k+2}/τ_{2k}, τ being leading Pfaffians.
pub fn tau_ratio_residual(m: &crate::moments::SkewMatrix, u: &[Real]) -> f64 {
    let mut prev = LogSigned::ONE;
    let mut worst: f64 = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        let tau = pfaffian(&m.leading(2 * k + 2));
        let ratio = (tau / prev).to_real();
        worst = worst.max(rel(uk, ratio));
        prev = tau;
    }
    worst
}

/// Lagrange prediction of Z at X² = (N+1)/4 from the values at X² = k/4,
/// k = 0..=N, compared with the direct product value there.
fn polynomial_in_x2(w: &WeightFamily, n: usize) -> Result<f64> {
    let t: Vec<Real> = (0..=n + 1).map(|k| Real::ratio(k as i64, 4)).collect();
    let z: Vec<Real> = t.iter().map(|&tk| Ok(z_product(w, tk.sqrt(), n)?.value.to_real())).collect::<Result<_>>()?;
    let target = t[n + 1];
    let mut pred = Real::ZERO;
    for i in 0..=n {
        let mut basis = Real::ONE;
        for j in 0..=n {
            if j != i {
                basis *= (target - t[j]) / (t[i] - t[j]);
            }
        }
        pred += basis * z[i];
    }
    Ok(rel(pred, z[n + 1]))
}

/// The four β=1/β=4 relations of the classical polynomials
/// p_{2m}, p_{2m+1} - ζ_m p_{2m-1} for m, n ≤ min(3, N-1).
fn structure_relations(w: &WeightFamily, n: usize, engine: &MomentEngine) -> Result<f64> {
    let top = n.min(4) - 1;
    let sd = skew_data(w, top)?;
    let ps = monic_op_table(w, 2 * top + 1)?;
    let zero = Polynomial::zero();
    let odd = |m: usize| {
        let prev = if m == 0 { &zero } else { ps[2 * m - 1].as_poly() };
        linear_combine(&[(Real::ONE, ps[2 * m + 1].as_poly()), (-sd.zeta[m], prev)])
    };
    let mut worst: f64 = 0.0;
    for m in 0..=top {
        for k in 0..=top {
            let scale = (sd.h1[m].to_real() * sd.h1[k].to_real()).sqrt();
            let ee = engine.inner1(ps[2 * m].as_poly(), ps[2 * k].as_poly())?;
            let oo = engine.inner1(&odd(m), &odd(k))?;
            let eo = engine.inner1(ps[2 * m].as_poly(), &odd(k))?;
            let want1 = if m == k { sd.h1[m].to_real() } else { Real::ZERO };
            let b4 = engine.inner4(ps[2 * m].as_poly(), ps[2 * k + 1].as_poly());
            let mut want4 = Real::ZERO;
            if m == k {
                want4 += sd.h4[2 * k].to_real();
            }
            if m == k + 1 {
                want4 -= sd.h4[2 * m - 1].to_real();
            }
            let s4 = sd.h4[2 * k].to_real().max(sd.h4[2 * m].to_real());
            for r in [ee / scale, oo / scale, (eo - want1) / scale, (b4 - want4) / s4] {
                worst = worst.max(r.abs().to_f64());
            }
        }
    }
    Ok(worst)
}

fn node_doubling(w: &WeightFamily, xs: &[Real], n: usize, nodes: usize) -> Result<f64> {
    fold_max(xs.iter().map(|&x| {
        let a = moment_matrix_with_nodes(w, x, n, nodes)?;
        let b = moment_matrix_with_nodes(w, x, n, 2 * nodes)?;
        let floor = b.max_abs() * Real::new(1e-20);
        let mut worst: f64 = 0.0;
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let s = a.get(i, j).abs().max(b.get(i, j).abs()).max(floor);
                worst = worst.max(((a.get(i, j) - b.get(i, j)) / s).abs().to_f64());
            }
        }
        Ok(worst)
    }))
}

/// Runs the suite for one family and size over the fugacities `xs`.
pub fn run_checks(w: &WeightFamily, n: usize, xs: &[Real], nodes: usize, slow: bool) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("alpha closed form vs recurrence", 1e-12, || {
        fold_max(xs.iter().map(|&x| {
            let rec = recurrence_alpha(w, x, n)?;
            fold_max((0..=n).map(|j| Ok(rel(closed_form_alpha(w, x, j)?, rec[j]))))
        }))
    }));
    out.push(check("xi * c = alpha", 1e-12, || {
        let c_rec = c_factor_table(w, n)?;
        fold_max(xs.iter().map(|&x| {
            let (a, v) = (recurrence_alpha(w, x, n)?, recurrence_xi(w, x, n)?);
            fold_max((0..=n).map(|j| {
                let closed = rel(closed_form_xi(w, x, j)? * closed_form_c(w, j), closed_form_alpha(w, x, j)?);
                Ok(closed.max(rel(v[j] * c_rec[j], a[j])))
            }))
        }))
    }));
    out.push(check("beta1 gamma ratio vs zeta", 1e-10, || {
        fold_max((1..=n.saturating_sub(1).max(1)).map(|j| Ok(rel(beta1_gamma_ratio(w, j)?, zeta(w, j)))))
    }));
    out.push(check("pf vs prod", Route::Pfaffian.tolerance(), || {
        fold_max(xs.iter().map(|&x| {
            let pf = z_pfaffian_with_nodes(w, x, n, nodes)?.value;
            Ok(pf.rel_diff(z_product(w, x, n)?.value).to_f64())
        }))
    }));
    if Route::BruteForce.available(n, slow) {
        out.push(check("bf vs prod", Route::BruteForce.tolerance(), || {
            fold_max(xs.iter().map(|&x| {
                let bf = z_bruteforce(w, x, n, slow)?.value;
                Ok(bf.rel_diff(z_product(w, x, n)?.value).to_f64())
            }))
        }));
    }
    out.push(check("Z positive on every route", 0.0, || {
        let mut bad = 0usize;
        for &x in xs {
            let mut vals = vec![z_pfaffian_with_nodes(w, x, n, nodes)?.value, z_product(w, x, n)?.value];
            if Route::BruteForce.available(n, slow) {
                vals.push(z_bruteforce(w, x, n, slow)?.value);
            }
            bad += vals.iter().filter(|v| v.sign() <= 0).count();
        }
        Ok(bad as f64)
    }));
    out.push(check("Z polynomial of degree N in X^2", 1e-8, || polynomial_in_x2(w, n)));

    let engine = MomentEngine::new(w, 2 * n, nodes);
    let per_x = |f: &dyn Fn(&MomentEngine, Real) -> Result<f64>| -> Result<f64> {
        let engine = engine.as_ref().map_err(Clone::clone)?;
        fold_max(xs.iter().map(|&x| f(engine, x)))
    };
    out.push(check("skew orthogonality off-block", 1e-8, || {
        per_x(&|e, x| {
            let fam = build_q_with_nodes(w, x, n, nodes)?;
            Ok(off_block_residual(&fam.skew_gram(e)?, &fam.u))
        })
    }));
    out.push(check("u_n vs tau ratio", 1e-8, || {
        per_x(&|e, x| {
            let fam = build_q_with_nodes(w, x, n, nodes)?;
            Ok(tau_ratio_residual(&e.moment_matrix(x, n)?, &fam.u))
        })
    }));
    out.push(check("operator route vs moment route Q", 1e-8, || {
        per_x(&|e, x| {
            let op = build_q_with_nodes(w, x, n, nodes)?;
            let mut mom = SopFamily::from_basis(w, x, extract_sop(&e.moment_matrix(x, n)?)?);
            mom.align_odd_gauge(&op);
            let scale = op.q.iter().fold(Real::ONE, |m, q| m.max(q.as_poly().max_abs_coeff()));
            let du = op.u.iter().zip(&mom.u).map(|(&a, &b)| rel(a, b)).fold(0.0, f64::max);
            Ok((mom.max_coeff_diff(&op) / scale).to_f64().max(du))
        })
    }));
    out.push(check("classical skew relations", 1e-9, || {
        let engine = engine.as_ref().map_err(Clone::clone)?;
        structure_relations(w, n, engine)
    }));
    out.push(check("moment node doubling", 1e-10, || node_doubling(w, xs, n, nodes)));
    out
}
