//! JSON exports of reports and reconstructed structures, plus a plain-text report summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use tannaka_core::aqg::{Aqg, Multiplier, PairElement};
use tannaka_core::braid::{Quasitriangularity, RMatrix};
use tannaka_core::dual::DualStructure;
use tannaka_core::group::{order_statistics, Cocommutativity, IntrinsicGroup};
use tannaka_core::hopf::HopfTable;
use tannaka_core::report::Report;
use tannaka_core::rep::{dimension, irrep};
use tannaka_core::C64;

use crate::format::matrix_json;

/// Non-finite residuals become `null`.
fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn scalars(d: &[C64]) -> Value {
    Value::Array(d.iter().map(|z| json!([num(z.re), num(z.im)])).collect())
}

pub fn report_json(r: &Report) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "check": c.check, "location": c.location, "residual": num(c.residual), "pass": c.pass }))
        .collect();
    let skipped: Vec<Value> = r
        .skipped
        .iter()
        .map(|s| json!({ "check": s.check, "location": s.location, "reason": s.reason }))
        .collect();
    json!({ "pass": r.pass(), "max_residual": num(r.max_residual()), "checks": checks, "skipped": skipped })
}

/// One line per check name: count, worst residual, verdict; then every failing location.
pub fn report_text(title: &str, r: &Report) -> String {
    let mut groups: Vec<(&str, usize, f64, bool)> = Vec::new();
    for c in &r.checks {
        match groups.iter_mut().find(|g| g.0 == c.check) {
            Some(g) => {
                g.1 += 1;
                g.2 = g.2.max(c.residual);
                g.3 &= c.pass;
            }
            None => groups.push((&c.check, 1, c.residual, c.pass)),
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{title}: {}", if r.pass() { "PASS" } else { "FAIL" });
    for (name, n, worst, pass) in &groups {
        let _ = writeln!(out, "  {:<4} {name:<40} n={n:<6} max={worst:.3e}", if *pass { "ok" } else { "FAIL" });
    }
    for c in r.failures() {
        let _ = writeln!(out, "  failed {} at {} (residual {:.3e})", c.check, c.location, c.residual);
    }
    if !r.skipped.is_empty() {
        let mut by: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &r.skipped {
            *by.entry(&s.check).or_insert(0) += 1;
        }
        for (name, n) in by {
            let _ = writeln!(out, "  skip {name} ({n} locations)");
        }
    }
    out
}

fn multiplier_json(q: &Aqg, m: &Multiplier) -> Value {
    let mut o = Map::new();
    for i in q.labels() {
        o.insert(q.bundle.labels[i].clone(), matrix_json(m.block(i)));
    }
    Value::Object(o)
}

fn pair_json(q: &Aqg, x: &PairElement) -> Value {
    let list: Vec<Value> = x
        .blocks
        .iter()
        .map(|(&(i, j), m)| json!({ "i": q.bundle.labels[i], "j": q.bundle.labels[j], "block": matrix_json(m) }))
        .collect();
    Value::Array(list)
}

pub fn dims_json(q: &Aqg) -> Value {
    let rows: Vec<Value> = q
        .labels()
        .map(|i| {
            json!({
                "label": q.bundle.labels[i],
                "dim": q.dim(i),
                "quantum_dim": num(dimension(q, &irrep(q, i))),
            })
        })
        .collect();
    Value::Array(rows)
}

pub fn dims_text(q: &Aqg) -> String {
    let mut out = format!("{:<12} {:>8} {:>22}\n", "label", "dim", "quantum dim");
    for i in q.labels() {
        let _ = writeln!(out, "{:<12} {:>8} {:>22.12}", q.bundle.labels[i], q.dim(i), dimension(q, &irrep(q, i)));
    }
    out
}

pub fn aqg_json(q: &Aqg) -> Value {
    let core: Vec<&str> = q.core.iter().map(|&i| q.bundle.labels[i].as_str()).collect();
    let dens = |d: &[tannaka_core::CMatrix]| -> Value {
        let mut o = Map::new();
        for i in q.labels() {
            o.insert(q.bundle.labels[i].clone(), matrix_json(&d[i]));
        }
        Value::Object(o)
    };
    json!({
        "labels": q.bundle.labels,
        "closed": q.bundle.closed,
        "algebra_dim": q.bundle.algebra_dim(),
        "core": core,
        "dims": dims_json(q),
        "f": multiplier_json(q, &q.f),
        "f_inv": multiplier_json(q, &q.f_inv),
        "haar_weights": q.haar_weights.iter().map(|&w| num(w)).collect::<Vec<_>>(),
        "haar_fallback": q.haar_fallback,
        "left_density": dens(&q.left_density),
        "right_density": dens(&q.right_density),
        "construction": report_json(&q.construction_report),
    })
}

fn hopf_json(h: &HopfTable) -> Value {
    json!({
        "dim": h.dim,
        "mult": scalars(&h.mult),
        "unit": scalars(&h.unit),
        "comult": scalars(&h.comult),
        "counit": scalars(&h.counit),
        "antipode": matrix_json(&h.antipode),
        "star": matrix_json(&h.star),
        "haar": scalars(&h.haar),
    })
}

pub fn dual_json(ds: &DualStructure) -> Value {
    json!({
        "algebra": hopf_json(&ds.a),
        "dual": hopf_json(&ds.dual),
        "pairing": matrix_json(&ds.pairing),
    })
}

pub fn rmatrix_json(q: &Aqg, r: &RMatrix, v: &Quasitriangularity) -> Value {
    json!({
        "R": pair_json(q, &r.value),
        "unitary": v.unitary,
        "triangular": v.triangular,
        "report": report_json(&v.report),
    })
}

pub fn group_json(q: &Aqg, g: &IntrinsicGroup, c: &Cocommutativity) -> Value {
    let stats: Map<String, Value> = order_statistics(&g.table).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "order": g.order(),
        "identity": g.identity,
        "table": g.table,
        "order_statistics": stats,
        "elements": g.elements.iter().map(|x| multiplier_json(q, x)).collect::<Vec<_>>(),
        "cocommutative": c.cocommutative,
        "cocommutativity_residual": num(c.residual),
        "span_ranks": c.span_ranks,
        "span_full": c.span_full,
        "report": report_json(&g.report),
    })
}
