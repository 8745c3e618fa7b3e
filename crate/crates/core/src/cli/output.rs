//! Rendering of command results as JSON, CSV or a text table.
//!
//! All real numbers are emitted as decimal strings in scientific notation
//! so that no precision is lost to a JSON double.

use serde_json::{json, Map, Value};

use crate::classical::WeightFamily;
use crate::moments::SkewMatrix;
use crate::numeric::Real;
use crate::partition::{PartitionResult, Route, SweepPoint};
use crate::sop::{CoefficientTable, SopFamily};

use super::verify::Check;

pub const SCHEMA: &str = "skewgas/1";

pub struct Header<'a> {
    pub command: &'a str,
    pub family: &'a WeightFamily,
    pub n: usize,
    pub digits: usize,
}

impl Header<'_> {
    fn dec(&self, v: Real) -> String {
        v.to_sci_string(self.digits)
    }

    fn params_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in self.family.params() {
            m.insert(k.to_string(), Value::String(self.dec(v)));
        }
        Value::Object(m)
    }

    /// `k=v` pairs joined by ';' for a single CSV cell.
    fn params_cell(&self) -> String {
        self.family.params().iter().map(|(k, v)| format!("{k}={}", self.dec(*v))).collect::<Vec<_>>().join(";")
    }

    fn object(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("family".into(), json!(self.family.name()));
        m.insert("params".into(), self.params_json());
        m.insert("N".into(), json!(self.n));
        m
    }
}

fn finish_json(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing memory buffer")).expect("CSV of UTF-8 fields")
}

pub fn sop_json(h: &Header, fam: &SopFamily, coeffs: &CoefficientTable) -> String {
    let mut m = h.object();
    m.insert("X".into(), json!(h.dec(fam.x)));
    let rows: Vec<Value> = (0..coeffs.alpha.len())
        .map(|j| {
            json!({
                "j": j,
                "alpha": h.dec(coeffs.alpha[j]),
                "xi": h.dec(coeffs.xi[j]),
                "c": h.dec(coeffs.c[j]),
            })
        })
        .collect();
    m.insert("coefficients".into(), Value::Array(rows));
    let polys: Vec<Value> = fam
        .q
        .iter()
        .enumerate()
        .map(|(k, q)| json!({ "index": k, "coefficients": q.coeffs().iter().map(|&c| h.dec(c)).collect::<Vec<_>>() }))
        .collect();
    m.insert("polynomials".into(), Value::Array(polys));
    m.insert("u".into(), Value::Array(fam.u.iter().map(|&u| json!(h.dec(u))).collect()));
    finish_json(m)
}

pub fn sop_csv(h: &Header, fam: &SopFamily) -> String {
    let mut rows = Vec::new();
    for (k, q) in fam.q.iter().enumerate() {
        for (p, &c) in q.coeffs().iter().enumerate() {
            rows.push(vec![
                h.family.name().to_string(),
                h.params_cell(),
                h.n.to_string(),
                h.dec(fam.x),
                k.to_string(),
                p.to_string(),
                h.dec(c),
            ]);
        }
    }
    csv_text(&["family", "params", "N", "X", "index", "power", "coefficient"], rows)
}

pub fn moments_json(h: &Header, x: Real, m: &SkewMatrix, quadrature_error: f64) -> String {
    let mut o = h.object();
    o.insert("X".into(), json!(h.dec(x)));
    o.insert("dim".into(), json!(m.dim()));
    o.insert("upper_triangle".into(), Value::Array(m.upper_triangle().iter().map(|&v| json!(h.dec(v))).collect()));
    o.insert("quadrature_error".into(), json!(h.dec(Real::new(quadrature_error))));
    finish_json(o)
}

pub fn moments_csv(h: &Header, x: Real, m: &SkewMatrix) -> String {
    let mut rows = Vec::new();
    for i in 0..m.dim() {
        for j in i + 1..m.dim() {
            rows.push(vec![
                h.family.name().to_string(),
                h.params_cell(),
                h.n.to_string(),
                h.dec(x),
                i.to_string(),
                j.to_string(),
                h.dec(m.get(i, j)),
            ]);
        }
    }
    csv_text(&["family", "params", "N", "X", "i", "j", "value"], rows)
}

fn routes_json(h: &Header, p: &SweepPoint) -> Value {
    let mut m = Map::new();
    for r in &p.results {
        m.insert(
            r.route.as_str().into(),
            json!({
                "log_value": h.dec(r.value.log_magnitude()),
                "sign": r.value.sign(),
                "error_estimate": h.dec(r.error_estimate),
                "value": h.dec(r.value.to_real()),
            }),
        );
    }
    Value::Object(m)
}

pub fn partition_json(h: &Header, p: &SweepPoint) -> String {
    let mut m = h.object();
    m.insert("X".into(), json!(h.dec(p.x)));
    m.insert("routes".into(), routes_json(h, p));
    m.insert("max_rel_diff".into(), json!(h.dec(p.max_rel_diff)));
    finish_json(m)
}

pub fn sweep_json(h: &Header, points: &[SweepPoint]) -> String {
    let mut m = h.object();
    let pts: Vec<Value> = points
        .iter()
        .map(|p| json!({ "X": h.dec(p.x), "routes": routes_json(h, p), "max_rel_diff": h.dec(p.max_rel_diff) }))
        .collect();
    m.insert("points".into(), Value::Array(pts));
    finish_json(m)
}

/// Difference of each route from the product route (or the first route
/// when the product route was not requested).
fn reference_of(p: &SweepPoint) -> &PartitionResult {
    p.get(Route::Product).unwrap_or(&p.results[0])
}

pub fn partition_csv(h: &Header, points: &[SweepPoint]) -> String {
    let mut rows = Vec::new();
    for p in points {
        let reference = reference_of(p).value;
        for r in &p.results {
            rows.push(vec![
                h.family.name().to_string(),
                h.params_cell(),
                h.n.to_string(),
                h.dec(p.x),
                r.route.as_str().to_string(),
                h.dec(r.value.log_magnitude()),
                r.value.sign().to_string(),
                h.dec(r.value.rel_diff(reference)),
            ]);
        }
    }
    csv_text(&["family", "params", "N", "X", "route", "log_value", "sign", "rel_err"], rows)
}

fn short(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.3e}")
    }
}

pub fn verify_table(h: &Header, xs: &[Real], checks: &[Check]) -> String {
    let xs_text: Vec<String> = xs.iter().map(|&x| x.to_sci_string(6)).collect();
    let mut s = format!("verify {} N={} X=[{}]\n", h.family, h.n, xs_text.join(", "));
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
    s.push_str(&format!("{:<width$}  {:>10}  {:>10}  status\n", "check", "residual", "tolerance"));
    for c in checks {
        let status = if c.passed() { "ok" } else { "FAIL" };
        s.push_str(&format!("{:<width$}  {:>10}  {:>10}  {status}", c.name, short(c.residual), short(c.tolerance)));
        if let Some(note) = &c.note {
            s.push_str(&format!("  ({note})"));
        }
        s.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    s.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
    s
}

pub fn verify_json(h: &Header, xs: &[Real], checks: &[Check]) -> String {
    let mut m = h.object();
    m.insert("X".into(), Value::Array(xs.iter().map(|&x| json!(h.dec(x))).collect()));
    let list: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "residual": short(c.residual),
                "tolerance": short(c.tolerance),
                "pass": c.passed(),
                "note": c.note,
            })
        })
        .collect();
    m.insert("checks".into(), Value::Array(list));
    m.insert("pass".into(), json!(checks.iter().all(Check::passed)));
    finish_json(m)
}

pub fn verify_csv(h: &Header, checks: &[Check]) -> String {
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                h.family.name().to_string(),
                h.params_cell(),
                h.n.to_string(),
                c.name.to_string(),
                short(c.residual),
                short(c.tolerance),
                (if c.passed() { "ok" } else { "FAIL" }).to_string(),
            ]
        })
        .collect();
    csv_text(&["family", "params", "N", "check", "residual", "tolerance", "status"], rows)
}
