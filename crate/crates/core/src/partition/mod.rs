//! The grand-canonical partition function Z_N(X) by three routes: the
//! Pfaffian of the moment matrix, the product 2^N α_N ∏ h⁽⁴⁾_{2j+1}, and
//! direct quadrature of the configuration integral for N ≤ 2.

mod bruteforce;

use std::fmt;
use std::str::FromStr;

pub use bruteforce::{cached_sector_value, sector_value, SectorValue, SECTOR_TOL};

use crate::classical::{skew_data, WeightFamily};
use crate::error::{Error, Result};
use crate::moments::{MomentEngine, DEFAULT_NODES};
use crate::numeric::{LogSigned, Real};
use crate::skewlinalg::pfaffian;
use crate::sop::{closed_form_alpha, recurrence_alpha};

/// Tolerated relative gap between the closed-form and recursive α_N.
const ALPHA_CROSS_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Pfaffian,
    Product,
    BruteForce,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Pfaffian, Route::Product, Route::BruteForce];

    /// Short name used on the command line and in JSON.
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Pfaffian => "pf",
            Route::Product => "prod",
            Route::BruteForce => "bf",
        }
    }

    /// Relative agreement expected of this route against the others.
    pub fn tolerance(self) -> f64 {
        match self {
            Route::Pfaffian | Route::Product => 1e-8,
            Route::BruteForce => 1e-5,
        }
    }

    /// Whether the route can run at this N; brute force stops at N = 2 and
    /// needs `slow` for its four-dimensional sector.
    pub fn available(self, n: usize, slow: bool) -> bool {
        match self {
            Route::Pfaffian | Route::Product => true,
            Route::BruteForce => n <= 1 || (n == 2 && slow),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s.trim() {
            "pf" | "pfaffian" => Ok(Route::Pfaffian),
            "prod" | "product" => Ok(Route::Product),
            "bf" | "bruteforce" => Ok(Route::BruteForce),
            other => Err(Error::InvalidParameter(format!("unknown route '{other}' (expected pf, prod or bf)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PartitionResult {
    pub family: WeightFamily,
    pub x: Real,
    pub n: usize,
    pub value: LogSigned,
    pub route: Route,
    /// Estimated relative error of `value`.
    pub error_estimate: Real,
}

/// 2^N Pf(m_ij(X)).
pub fn z_pfaffian(w: &WeightFamily, x: Real, n: usize) -> Result<PartitionResult> {
    z_pfaffian_with_nodes(w, x, n, DEFAULT_NODES)
}

pub fn z_pfaffian_with_nodes(w: &WeightFamily, x: Real, n: usize, n_nodes: usize) -> Result<PartitionResult> {
    let (value, error_estimate) = if n == 0 {
        (LogSigned::ONE, Real::ZERO)
    } else {
        w.check_size(n)?;
        let engine = MomentEngine::new(w, 2 * n, n_nodes)?;
        let pf = pfaffian(&engine.moment_matrix(x, n)?);
        (pf * two_pow(n), Real::new(engine.table().max_relative_error()))
    };
    Ok(PartitionResult { family: *w, x, n, value, route: Route::Pfaffian, error_estimate })
}

fn two_pow(n: usize) -> LogSigned {
    LogSigned::from_log(Real::LN_2 * Real::from_usize(n))
}

/// 2^N α_N(X) ∏_{j<N} h⁽⁴⁾_{2j+1}, with α_N from its closed form. The
/// recursive α_N must agree to 1e-10; the gap is reported as the error.
pub fn z_product(w: &WeightFamily, x: Real, n: usize) -> Result<PartitionResult> {
    if n == 0 {
        return Ok(PartitionResult {
            family: *w,
            x,
            n,
            value: LogSigned::ONE,
            route: Route::Product,
            error_estimate: Real::ZERO,
        });
    }
    w.check_size(n)?;
    let closed = closed_form_alpha(w, x, n)?;
    let rec = recurrence_alpha(w, x, n)?[n];
    let gap = ((closed - rec) / rec).abs();
    if !(gap.to_f64() <= ALPHA_CROSS_TOL) {
        return Err(Error::Consistency {
            what: format!("closed-form vs recursive alpha_{n} for {w} at X = {}", x.to_sci_string(17)),
            residual: gap.to_f64(),
            tol: ALPHA_CROSS_TOL,
        });
    }
    let d = skew_data(w, n - 1)?;
    let mut value = two_pow(n) * LogSigned::from_real(closed);
    for j in 0..n {
        value = value * d.h4[2 * j + 1];
    }
    Ok(PartitionResult { family: *w, x, n, value, route: Route::Product, error_estimate: gap })
}

/// Σ_{L+2M=2N} X^L Z_{L,M} with each sector integrated directly. N = 2
/// includes the expensive (4, 0) sector and therefore requires `slow`.
pub fn z_bruteforce(w: &WeightFamily, x: Real, n: usize, slow: bool) -> Result<PartitionResult> {
    if n > 2 {
        return Err(Error::Range(format!("brute-force partition function needs N <= 2, got {n}")));
    }
    if n == 2 && !slow {
        return Err(Error::InvalidParameter("brute-force route at N = 2 requires the slow flag".into()));
    }
    let mut total = Real::ZERO;
    let mut abs_err = Real::ZERO;
    for m in 0..=n {
        let l = 2 * (n - m);
        if l > 0 && x.is_zero() {
            continue;
        }
        let s = cached_sector_value(w, l, m)?;
        let term = x.powi(l as i32) * s.value;
        total += term;
        abs_err += term.abs() * Real::new(s.rel_error);
    }
    let value = LogSigned::from_real(total);
    let error_estimate = if total.is_zero() { Real::ZERO } else { abs_err / total.abs() };
    Ok(PartitionResult { family: *w, x, n, value, route: Route::BruteForce, error_estimate })
}

/// Dispatch on the route.
pub fn z_route(w: &WeightFamily, x: Real, n: usize, route: Route, slow: bool, n_nodes: usize) -> Result<PartitionResult> {
    match route {
        Route::Pfaffian => z_pfaffian_with_nodes(w, x, n, n_nodes),
        Route::Product => z_product(w, x, n),
        Route::BruteForce => z_bruteforce(w, x, n, slow),
    }
}

/// All requested routes at one X.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub x: Real,
    pub results: Vec<PartitionResult>,
    /// Largest pairwise relative difference of the route values.
    pub max_rel_diff: Real,
    /// Largest pairwise difference divided by the looser of the two route
    /// tolerances; the routes agree when this is at most 1.
    pub worst_ratio: f64,
}

impl SweepPoint {
    pub fn from_results(x: Real, results: Vec<PartitionResult>) -> SweepPoint {
        let mut max_rel_diff = Real::ZERO;
        let mut worst_ratio: f64 = 0.0;
        for (i, a) in results.iter().enumerate() {
            for b in &results[..i] {
                let d = a.value.rel_diff(b.value);
                max_rel_diff = max_rel_diff.max(d);
                let tol = a.route.tolerance().max(b.route.tolerance());
                worst_ratio = worst_ratio.max(d.to_f64() / tol);
            }
        }
        SweepPoint { x, results, max_rel_diff, worst_ratio }
    }

    pub fn agrees(&self) -> bool {
        self.worst_ratio <= 1.0 && self.results.iter().all(|r| r.value.sign() > 0)
    }

    pub fn get(&self, route: Route) -> Option<&PartitionResult> {
        self.results.iter().find(|r| r.route == route)
    }
}

/// Every route in `routes` at every X of the grid.
pub fn z_sweep(w: &WeightFamily, grid: &[Real], n: usize, routes: &[Route], slow: bool) -> Result<Vec<SweepPoint>> {
    z_sweep_with_nodes(w, grid, n, routes, slow, DEFAULT_NODES)
}

pub fn z_sweep_with_nodes(
    w: &WeightFamily,
    grid: &[Real],
    n: usize,
    routes: &[Route],
    slow: bool,
    n_nodes: usize,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty X grid".into()));
    }
    grid.iter()
        .map(|&x| {
            let results = routes.iter().map(|&r| z_route(w, x, n, r, slow, n_nodes)).collect::<Result<Vec<_>>>()?;
            Ok(SweepPoint::from_results(x, results))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_pi() -> Real {
        Real::PI.sqrt()
    }

    fn rel(a: LogSigned, b: Real) -> f64 {
        a.rel_diff(LogSigned::from_real(b)).to_f64()
    }

    #[test]
    fn gaussian_one_pair_all_routes() {
        let g = WeightFamily::gaussian();
        for xv in [0.0, 1.0, 2.0] {
            let x = Real::new(xv);
            let expect = sqrt_pi() * (Real::TWO * x.sqr() + Real::ONE);
            assert!(rel(z_pfaffian(&g, x, 1).unwrap().value, expect) < 1e-25);
            assert!(rel(z_product(&g, x, 1).unwrap().value, expect) < 1e-25);
            let bf = z_bruteforce(&g, x, 1, false).unwrap();
            assert!(rel(bf.value, expect) < 1e-8, "{bf:?}");
        }
    }

    #[test]
    fn empty_system() {
        let g = WeightFamily::gaussian();
        assert_eq!(z_product(&g, Real::ONE, 0).unwrap().value, LogSigned::ONE);
    }

    #[test]
    fn jacobi_uniform_at_zero_fugacity() {
        // only the single charge-2 particle: ∫_{-1}^{1} (1 - z²) dz
        let w = WeightFamily::jacobi(Real::ZERO, Real::ZERO).unwrap();
        let x = Real::ZERO;
        let expect = Real::ratio(4, 3);
        for r in [z_pfaffian(&w, x, 1), z_product(&w, x, 1), z_bruteforce(&w, x, 1, false)] {
            let r = r.unwrap();
            // the direct route works in double precision
            let tol = if r.route == Route::BruteForce { 1e-14 } else { 1e-25 };
            assert!(rel(r.value, expect) < tol, "{r:?}");
        }
    }

    #[test]
    fn gaussian_sweep_values() {
        let g = WeightFamily::gaussian();
        let grid: Vec<Real> = [0.0, 1.0, 2.0].iter().map(|&v| Real::new(v)).collect();
        let pts = z_sweep(&g, &grid, 1, &Route::ALL, false).unwrap();
        for (p, k) in pts.iter().zip([1.0, 3.0, 9.0]) {
            assert!(p.agrees(), "{p:?}");
            assert!(rel(p.get(Route::Product).unwrap().value, sqrt_pi() * Real::new(k)) < 1e-25);
        }
    }

    #[test]
    fn slow_gate() {
        let g = WeightFamily::gaussian();
        assert!(matches!(z_bruteforce(&g, Real::ONE, 2, false), Err(Error::InvalidParameter(_))));
        assert!(matches!(z_bruteforce(&g, Real::ONE, 3, true), Err(Error::Range(_))));
        assert!(!Route::BruteForce.available(2, false));
        assert!(Route::BruteForce.available(2, true));
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.as_str().parse::<Route>().unwrap(), r);
        }
        assert!("mc".parse::<Route>().is_err());
    }
}
