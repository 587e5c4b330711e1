//! JSON shapes of command results. Markdown and CSV are rendered from these.

use serde_json::{json, Map, Value};
use swf_core::floer::{Eighths, InvariantReport, SwfhTable};
use swf_core::rational::Characteristic;
use swf_core::swfclass::{dp, tate, BorelDims, SwfClass, Violation};

/// Inclusive degree range of a homology table.
pub type Degrees = (i64, i64);

pub fn eighths(e: Eighths) -> Value {
    json!({ "eighths": e.0, "value": e.to_string() })
}

pub fn is_eighths(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.len() == 2 && m.contains_key("eighths") && m.contains_key("value"))
}

fn opt_eighths(e: Option<Eighths>) -> Value {
    e.map_or(Value::Null, eighths)
}

fn dims(range: Degrees, dim: impl Fn(i64) -> Option<usize>) -> Value {
    (range.0..=range.1)
        .map(|d| json!({ "degree": d, "dim": dim(d) }))
        .collect()
}

pub fn borel_table(b: &BorelDims, range: Degrees) -> Value {
    dims(range, |d| b.dim(d))
}

pub fn swfh_table(t: &SwfhTable, range: Degrees) -> Value {
    dims(range, |d| t.dim(d))
}

/// Structural data of a class: level, ideal, a/b/c, d_p and Tate period.
pub fn class_fields(out: &mut Map<String, Value>, x: &SwfClass) {
    let abc = x.abc();
    let dp_of = |p| dp(x, p).ok();
    out.insert("level".into(), json!(x.level));
    out.insert(
        "ideal".into(),
        json!({ "i": x.ideal.i, "j": x.ideal.j, "k": x.ideal.k }),
    );
    out.insert("abc".into(), json!({ "a": abc.a, "b": abc.b, "c": abc.c }));
    out.insert(
        "dp".into(),
        json!({ "char0": dp_of(Characteristic::Zero), "char2": dp_of(Characteristic::Two) }),
    );
    out.insert("tate".into(), json!(tate(x).normalized().period));
}

/// The numerical invariants of a report.
pub fn report_fields(out: &mut Map<String, Value>, r: &InvariantReport) {
    let (alpha, beta, gamma, d0, d2) = r.numbers();
    out.insert("alpha".into(), eighths(alpha));
    out.insert("beta".into(), eighths(beta));
    out.insert("gamma".into(), eighths(gamma));
    out.insert("delta0".into(), opt_eighths(d0));
    out.insert("delta2".into(), opt_eighths(d2));
    out.insert("mu".into(), eighths(r.mu));
    out.insert("lambda".into(), json!(r.lambda_reference));
}

/// The degree range to tabulate: `[a - 12, a + 8]` unless overridden.
pub fn window(centre: i64, over: Option<Degrees>) -> Degrees {
    over.unwrap_or((centre - 12, centre + 8))
}

pub fn swfh_fields(
    out: &mut Map<String, Value>,
    r: &InvariantReport,
    centre: i64,
    over: Option<Degrees>,
) {
    match &r.swfh {
        Some(t) => {
            if let Some(shift) = t.fractional_shift {
                out.insert("swfh_shift".into(), eighths(shift));
            }
            out.insert("swfh".into(), swfh_table(t, window(centre, over)));
        }
        None => {
            out.insert("swfh".into(), Value::Null);
        }
    }
}

pub fn provenance(out: &mut Map<String, Value>, lines: &[String]) {
    out.insert("provenance".into(), json!(lines));
}

pub fn violations(v: &[Violation]) -> Value {
    v.iter()
        .map(|x| json!({ "quantity": x.quantity, "detail": x.detail }))
        .collect()
}
