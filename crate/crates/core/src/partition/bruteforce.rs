//! Direct evaluation of the sector integrals Z_{L,M} of the defining
//! configuration integral.
//!
//! The charge-1 coordinates are integrated over the ordered simplex
//! α_1 < … < α_L by nested double-exponential rules, so ∏|α_k - α_j| is a
//! plain product of positive differences. The charge-2 coordinates enter
//! only through even powers of differences and are summed with the family's
//! Gauss rule for w4.
//!
//! This route is compared at 1e-5, so it runs in plain f64 with its own maps.
//! That keeps the four-dimensional sector affordable and shares no
//! arithmetic with the double-double moment pipeline.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::classical::{FamilyKind, WeightFamily};
use crate::error::{Error, Result};
use crate::moments::quadrature_rule;
use crate::numeric::Real;

/// Maximum accepted relative step-halving difference for a sector.
pub const SECTOR_TOL: f64 = 1e-6;

/// Lower truncation of the DE parameter. At s = -3.5 the omitted end pieces
/// are below 1e-10 relative even for the endpoint singularities of w1.
const S_MIN: f64 = -3.5;

/// Upper truncation for half-line pieces, whose offsets grow only like e^s
/// there: s = 5 (offset about 150) clears the Laguerre tail e^{-z/2}.
/// Finite pieces stop at s = -S_MIN.
const S_MAX: f64 = 5.0;

/// Fine DE step per family; the estimate repeats the sum at twice the step.
/// The Cauchy angle chart converges slowest because cos^{p-1}(θ/2) is
/// narrow against the interval.
fn fine_step(w: &WeightFamily) -> f64 {
    match w.kind() {
        FamilyKind::Gaussian | FamilyKind::Laguerre { .. } => 1.0 / 10.0,
        FamilyKind::Jacobi { .. } => 1.0 / 8.0,
        FamilyKind::GenCauchy { .. } => 1.0 / 16.0,
    }
}

/// Quadrature weights below e^-50 are dropped together with their subtree.
const LOG_NEGLIGIBLE: f64 = -50.0;

/// One charge sector: L charge-1 and M charge-2 particles with L + 2M = 2N.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorValue {
    pub l: usize,
    pub m: usize,
    pub value: Real,
    /// |Z(h) - Z(2h)| / |Z(h)|
    pub rel_error: f64,
}

/// A chart point with its distances to both support ends.
#[derive(Clone, Copy, Debug)]
struct Node {
    t: f64,
    lo: f64,
    hi: f64,
    jac: f64,
}

/// The s-dependent factors of a DE abscissa. Finite pieces use tanh-sinh;
/// half-line pieces use the offset exp(s - e^{-s}), which still reaches the
/// finite end double exponentially but spaces the nodes like z h far out,
/// where exp-sinh would leave Gaussian and exponential tails under-resolved.
#[derive(Clone, Copy, Debug)]
struct Tick {
    s: f64,
    positive: bool,
    near: f64,
    fin_jac: f64,
    off: f64,
    off_jac: f64,
}

fn ticks(h: f64) -> Vec<Tick> {
    let k_min = (S_MIN / h).floor() as i64;
    let k_max = (S_MAX / h).ceil() as i64;
    (k_min..=k_max)
        .map(|k| {
            let s = h * k as f64;
            let u = std::f64::consts::FRAC_PI_2 * s.sinh();
            let du = std::f64::consts::FRAC_PI_2 * s.cosh();
            let e = (-2.0 * u.abs()).exp();
            let em = (-s).exp();
            let off = (s - em).exp();
            Tick {
                s,
                positive: s >= 0.0,
                near: e / (1.0 + e),
                fin_jac: 2.0 * e / (1.0 + e).powi(2) * du,
                off,
                off_jac: off * (1.0 + em),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Seg {
    /// [a, a + len] with support distances `dlo` of a and `dhi` of a + len
    Finite { a: f64, len: f64, dlo: f64, dhi: f64 },
    Right { a: f64, dlo: f64 },
    Left { b: f64, dhi: f64 },
}

impl Seg {
    fn at(&self, k: &Tick) -> Node {
        match *self {
            Seg::Finite { a, len, dlo, dhi } => {
                let near = len * k.near;
                let far = len - near;
                let jac = len * k.fin_jac;
                if k.positive {
                    Node { t: a + far, lo: dlo + far, hi: dhi + near, jac }
                } else {
                    Node { t: a + near, lo: dlo + near, hi: dhi + far, jac }
                }
            }
            Seg::Right { a, dlo } => Node { t: a + k.off, lo: dlo + k.off, hi: f64::INFINITY, jac: k.off_jac },
            Seg::Left { b, dhi } => Node { t: b - k.off, lo: f64::INFINITY, hi: dhi + k.off, jac: k.off_jac },
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Gaussian,
    Laguerre { a: f64 },
    Jacobi { a: f64, b: f64 },
    Cauchy { p: f64, q: f64 },
}

/// Coordinate t with w1(z) dz = m(t) dt, cut at breakpoints into pieces
/// that each hold the bulk of w1 near an end. The Cauchy family uses the
/// angle θ ∈ (-π, π) with z = tan(θ/2); the others use t = z.
#[derive(Clone, Debug)]
struct Chart {
    kind: Kind,
    lo: Option<f64>,
    hi: Option<f64>,
    breaks: Vec<f64>,
}

impl Chart {
    fn new(w: &WeightFamily) -> Chart {
        let pi = std::f64::consts::PI;
        match w.kind() {
            FamilyKind::Gaussian => Chart { kind: Kind::Gaussian, lo: None, hi: None, breaks: vec![0.0] },
            FamilyKind::Laguerre { a } => {
                let a = a.to_f64();
                Chart { kind: Kind::Laguerre { a }, lo: Some(0.0), hi: None, breaks: vec![(a + 1.0).max(1.0)] }
            }
            FamilyKind::Jacobi { a, b } => Chart {
                kind: Kind::Jacobi { a: a.to_f64(), b: b.to_f64() },
                lo: Some(-1.0),
                hi: Some(1.0),
                breaks: vec![0.0],
            },
            FamilyKind::GenCauchy { p, q } => Chart {
                kind: Kind::Cauchy { p: p.to_f64(), q: q.to_f64() },
                lo: Some(-pi),
                hi: Some(pi),
                breaks: vec![0.0],
            },
        }
    }

    /// (z, ln m(t)).
    fn eval(&self, n: &Node) -> (f64, f64) {
        match self.kind {
            Kind::Gaussian => (n.t, -0.5 * n.t * n.t),
            Kind::Laguerre { a } => (n.lo, 0.5 * (a - 1.0) * n.lo.ln() - 0.5 * n.lo),
            Kind::Jacobi { a, b } => (n.t, 0.5 * (a - 1.0) * n.hi.ln() + 0.5 * (b - 1.0) * n.lo.ln()),
            Kind::Cauchy { p, q } => {
                // cos(θ/2) = sin(d/2), d the distance to the nearer end
                let right = n.t >= 0.0;
                let d = if right { n.hi } else { n.lo };
                let (s, c) = (0.5 * d).sin_cos();
                let z = if right { c / s } else { -c / s };
                (z, -std::f64::consts::LN_2 + (p - 1.0) * s.ln() + 0.5 * q * n.t)
            }
        }
    }

    fn dist_lo(&self, t: f64) -> f64 {
        self.lo.map_or(f64::INFINITY, |l| t - l)
    }

    fn dist_hi(&self, t: f64) -> f64 {
        self.hi.map_or(f64::INFINITY, |h| h - t)
    }

    /// The pieces between consecutive breakpoints, from the lower support
    /// end to the upper one.
    fn pieces(&self) -> Vec<Seg> {
        let b = &self.breaks;
        let mut out = Vec::with_capacity(b.len() + 1);
        out.push(match self.lo {
            Some(lo) => Seg::Finite { a: lo, len: b[0] - lo, dlo: 0.0, dhi: self.dist_hi(b[0]) },
            None => Seg::Left { b: b[0], dhi: self.dist_hi(b[0]) },
        });
        for w in b.windows(2) {
            out.push(Seg::Finite { a: w[0], len: w[1] - w[0], dlo: self.dist_lo(w[0]), dhi: self.dist_hi(w[1]) });
        }
        let last = b[b.len() - 1];
        out.push(match self.hi {
            Some(hi) => Seg::Finite { a: last, len: hi - last, dlo: self.dist_lo(last), dhi: 0.0 },
            None => Seg::Right { a: last, dlo: self.dist_lo(last) },
        });
        out
    }

    /// The index k of the piece holding `upper`, and the partial segment
    /// from that piece's lower end to `upper`.
    fn partial(&self, upper: &Node) -> (usize, Seg) {
        let k = self.breaks.iter().take_while(|&&b| b < upper.t).count();
        let seg = if k == 0 {
            match self.lo {
                Some(lo) => Seg::Finite { a: lo, len: upper.lo, dlo: 0.0, dhi: upper.hi },
                None => Seg::Left { b: upper.t, dhi: upper.hi },
            }
        } else {
            let a = self.breaks[k - 1];
            Seg::Finite { a, len: upper.t - a, dlo: self.dist_lo(a), dhi: upper.hi }
        };
        (k, seg)
    }
}

/// (node, z, quadrature weight including the w1 density)
type Point = (Node, f64, f64);

struct Nested<'a> {
    chart: Chart,
    ticks: &'a [Tick],
    h: f64,
    /// points of every full piece, shared by all levels
    pieces: Vec<Vec<Point>>,
}

impl<'a> Nested<'a> {
    fn new(chart: Chart, ticks: &'a [Tick], h: f64) -> Nested<'a> {
        let mut n = Nested { chart, ticks, h, pieces: Vec::new() };
        n.pieces = n
            .chart
            .pieces()
            .into_iter()
            .map(|seg| {
                let mut v = Vec::new();
                n.collect(seg, &mut v);
                v
            })
            .collect();
        n
    }

    fn collect(&self, seg: Seg, out: &mut Vec<Point>) {
        let finite = matches!(seg, Seg::Finite { .. });
        for k in self.ticks {
            if finite && k.s > -S_MIN {
                break;
            }
            let node = seg.at(k);
            if !(node.jac > 0.0) || !node.jac.is_finite() {
                continue;
            }
            let (z, lm) = self.chart.eval(&node);
            let lw = lm + node.jac.ln();
            if lw < LOG_NEGLIGIBLE || !z.is_finite() {
                continue;
            }
            out.push((node, z, self.h * lw.exp()));
        }
    }

    /// ∫_{α_L > … > α_1} f(α_L, …, α_1) ∏ w1(α_j) dα; `zs` collects the
    /// coordinates from the largest down, `scratch` holds one point buffer
    /// per level.
    fn integrate(
        &self,
        level: usize,
        upper: Option<&Node>,
        zs: &mut Vec<f64>,
        scratch: &mut [Vec<Point>],
        f: &dyn Fn(&[f64]) -> f64,
    ) -> f64 {
        let (mine, rest) = scratch.split_first_mut().expect("one buffer per level");
        mine.clear();
        let full = match upper {
            None => self.pieces.len(),
            Some(u) => {
                let (k, seg) = self.chart.partial(u);
                self.collect(seg, mine);
                k
            }
        };
        let mut sum = 0.0;
        for &(node, z, wt) in self.pieces[..full].iter().flatten().chain(mine.iter()) {
            zs.push(z);
            let v = if level == 1 { f(zs) } else { self.integrate(level - 1, Some(&node), zs, rest, f) };
            zs.pop();
            sum += wt * v;
        }
        sum
    }
}

/// Product of positive differences of a decreasing sequence.
fn ordered_vandermonde(zs: &[f64]) -> f64 {
    let mut v = 1.0;
    for j in 0..zs.len() {
        for k in j + 1..zs.len() {
            v *= zs[j] - zs[k];
        }
    }
    v
}

/// (1/M!) ∫ ∏|β_k - β_j|⁴ ∏(α_j - β_k)² ∏ w4(β_k) dβ for M ≤ 2.
fn charge2_factor(alphas: &[f64], beta: &[(f64, f64)], m: usize) -> f64 {
    let pair = |b: f64| alphas.iter().fold(1.0, |acc, &a| acc * (a - b) * (a - b));
    match m {
        0 => 1.0,
        1 => beta.iter().map(|&(b, w)| w * pair(b)).sum(),
        2 => {
            // summing only k < i supplies the 1/2!; the diagonal vanishes
            let mut s = 0.0;
            for (i, &(b1, w1)) in beta.iter().enumerate() {
                let p1 = w1 * pair(b1);
                for &(b2, w2) in &beta[..i] {
                    s += p1 * w2 * pair(b2) * (b1 - b2).powi(4);
                }
            }
            s
        }
        _ => unreachable!("at most two charge-2 particles"),
    }
}

fn sector_at_step(w: &WeightFamily, l: usize, m: usize, h: f64, beta: &[(f64, f64)]) -> f64 {
    let f = |zs: &[f64]| ordered_vandermonde(zs) * charge2_factor(zs, beta, m);
    if l == 0 {
        return f(&[]);
    }
    let t = ticks(h);
    let nested = Nested::new(Chart::new(w), &t, h);
    let mut scratch = vec![Vec::new(); l];
    nested.integrate(l, None, &mut Vec::with_capacity(l), &mut scratch, &f)
}

/// Z_{L,M} with its step-halving error estimate.
pub fn sector_value(w: &WeightFamily, l: usize, m: usize) -> Result<SectorValue> {
    if m > 2 || l > 4 {
        return Err(Error::Range(format!("sector (L, M) = ({l}, {m}) is beyond the brute-force range")));
    }
    w.check_size(l + 2 * m)?;
    let nb = match w.kind() {
        FamilyKind::GenCauchy { .. } => 64,
        // exact for the charge-2 polynomial degree 4(M-1) + 2L + deg f ≤ 10
        _ => 8,
    };
    let beta: Vec<(f64, f64)> =
        quadrature_rule(w, nb)?.w4_points().into_iter().map(|(z, wt)| (z.to_f64(), wt.to_f64())).collect();
    let h = fine_step(w);
    let fine = sector_at_step(w, l, m, h, &beta);
    let rel_error = if l == 0 {
        0.0
    } else {
        let coarse = sector_at_step(w, l, m, 2.0 * h, &beta);
        ((fine - coarse) / fine).abs()
    };
    if !(rel_error <= SECTOR_TOL) {
        return Err(Error::Quadrature { what: format!("brute-force sector ({l}, {m}) for {w}"), estimate: rel_error });
    }
    Ok(SectorValue { l, m, value: Real::new(fine), rel_error })
}

fn sector_cache() -> &'static Mutex<HashMap<String, SectorValue>> {
    static CACHE: OnceLock<Mutex<HashMap<String, SectorValue>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`sector_value`], remembered for the life of the process since the
/// sectors do not depend on X.
pub fn cached_sector_value(w: &WeightFamily, l: usize, m: usize) -> Result<SectorValue> {
    let key = format!("{:?}|{l}|{m}", w.kind());
    if let Some(v) = sector_cache().lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let v = sector_value(w, l, m)?;
    sector_cache().lock().unwrap().insert(key, v);
    Ok(v)
}
