//! JSON rendering of verification and degeneration reports.
//!
//! The document layout is a stable, diffable regression artifact: a
//! top-level array with one object per identity (or per degeneration
//! pair), keys serialized in sorted order, and every float finite —
//! non-finite residuals are clamped to a sentinel so the document always
//! parses. Replaying a run with the same seed and precision reproduces
//! the bytes exactly except for the `elapsed_ms` fields.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::identities::{TrialRecord, VerificationReport};
use crate::limits::PairReport;

/// Stand-in for non-finite residuals, keeping the JSON plain-float.
const NONFINITE_SENTINEL: f64 = 1e308;

fn clamp(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        NONFINITE_SENTINEL
    }
}

fn params_json(params: &BTreeMap<&'static str, (f64, f64)>) -> Value {
    let mut m = Map::new();
    for (name, (re, im)) in params {
        m.insert((*name).to_string(), json!([re, im]));
    }
    Value::Object(m)
}

fn failure_json(t: &TrialRecord) -> Value {
    json!({
        "params": params_json(&t.params),
        "residual": clamp(t.residual),
    })
}

/// One verification report as a JSON object.
pub fn verification_json(r: &VerificationReport) -> Value {
    json!({
        "identity": r.identity,
        "seed": r.seed,
        "trials": r.trials,
        "precision": r.tier.name(),
        "max_residual": clamp(r.max_residual),
        "tolerance": r.tolerance,
        "status": if r.pass { "pass" } else { "fail" },
        "failures": r.failures.iter().map(failure_json).collect::<Vec<_>>(),
        "elapsed_ms": r.elapsed_ms,
    })
}

/// A batch of verification reports as a top-level JSON array.
pub fn verification_array(rs: &[VerificationReport]) -> Value {
    Value::Array(rs.iter().map(verification_json).collect())
}

/// One degeneration-pair report as a JSON object.
pub fn pair_json(r: &PairReport) -> Value {
    let draws: Vec<Value> = r
        .draws
        .iter()
        .map(|d| {
            json!({
                "params": params_json(&d.params),
                "errors": d.errors.iter().map(|e| clamp(*e)).collect::<Vec<_>>(),
                "order_ok": d.order_ok,
            })
        })
        .collect();
    json!({
        "elliptic": r.elliptic,
        "basic": r.basic,
        "seed": r.seed,
        "trials": r.trials,
        "precision": r.tier.name(),
        "status": if r.all_ok { "pass" } else { "fail" },
        "draws": draws,
        "elapsed_ms": r.elapsed_ms,
    })
}

/// A batch of pair reports as a top-level JSON array.
pub fn pair_array(rs: &[PairReport]) -> Value {
    Value::Array(rs.iter().map(pair_json).collect())
}

/// Pretty-prints any report document with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report values are plain JSON");
    s.push('\n');
    s
}
