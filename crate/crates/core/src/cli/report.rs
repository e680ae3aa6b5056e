//! JSON and text renderings of a structure report.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::curve::NormalizedParametrization;
use crate::offset::StructureReport;
use crate::polycore::{MultiPoly, QPoly};

/// Input echo for reports.
pub struct InputEcho {
    pub x: String,
    pub y: String,
    pub d: BigRational,
}

fn poly(p: &MultiPoly) -> Value {
    Value::String(p.to_string())
}

fn qtext(p: &QPoly) -> Value {
    Value::String(p.to_text("t"))
}

/// The report document. `serde_json` maps keep keys sorted, so equal reports
/// serialize to equal bytes apart from `timings`.
pub fn report_json(
    input: &InputEcho,
    np: &NormalizedParametrization,
    r: &StructureReport,
) -> Value {
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|f| json!({"poly": poly(&f.poly), "multiplicity": f.multiplicity_in_h, "kind": f.kind.label()}))
        .collect();
    json!({
        "input": {"x": input.x, "y": input.y, "d": input.d.to_string()},
        "normalized": {"X": qtext(&np.x), "Y": qtext(&np.y), "W": qtext(&np.w)},
        "tracing_index": r.tracing_index,
        "H": poly(&r.h),
        "F": poly(&r.f),
        "G": poly(&r.g),
        "factors": factors,
        "exponent_pattern": r.exponent_pattern,
        "has_special": r.has_special,
        "special_equation": r.special_equation().map(poly),
        "f1_part": poly(&r.f1_part),
        "f2_part": poly(&r.f2_part),
        "verdict_squarefree": r.verdict_squarefree,
        "is_offset": r.is_offset(),
        "verified": r.verified,
        "constants": {
            "H": r.h_constant.to_string(),
            "split": r.split_constant.to_string(),
            "removed_content_P": qtext(&r.removed_content_p),
            "removed_content_Q": qtext(&r.removed_content_q),
        },
        "diagnostics": r.diagnostics,
        "theorem_violation": r.theorem_violation,
        "timings": r.timings,
    })
}

pub fn report_text(input: &InputEcho, r: &StructureReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "curve: x = {}, y = {}", input.x, input.y);
    let _ = writeln!(s, "distance: {}", input.d);
    let _ = writeln!(s, "tracing index: {}", r.tracing_index);
    let _ = writeln!(s, "F = {}", r.f);
    let _ = writeln!(s, "G = {}", r.g);
    let _ = writeln!(s, "factors:");
    for f in &r.factors {
        let _ = writeln!(
            s,
            "  {} (multiplicity {}): {}",
            f.kind.label(),
            f.multiplicity_in_h,
            f.poly
        );
    }
    let pattern: Vec<String> = r.exponent_pattern.iter().map(u32::to_string).collect();
    let _ = writeln!(s, "exponent pattern: {{{}}}", pattern.join(", "));
    match r.special_equation() {
        Some(e) => {
            let _ = writeln!(s, "special component: {e}");
        }
        None => {
            let _ = writeln!(s, "special component: none");
        }
    }
    let _ = writeln!(
        s,
        "F squarefree: {}",
        if r.verdict_squarefree { "yes" } else { "no" }
    );
    let _ = writeln!(
        s,
        "H = c * F * G with c = {}",
        &r.h_constant * &r.split_constant
    );
    for d in &r.diagnostics {
        let _ = writeln!(s, "note: {d}");
    }
    s
}
