//! JSON and CSV rendering. Reals carry 17 significant digits; integral
//! values print as integers; non-finite values become `null`.

use serde_json::{json, Map, Value};

use twistknot_core::slopes::{Interval, IntervalSet, SlopeSample, Witness};
use twistknot_core::verify::{IdentityReport, SuiteReport};
use twistknot_core::Error;

/// `x` with 17 significant digits, as JSON number text.
pub fn real_text(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    if (-5..17).contains(&exp) {
        let fixed = format!("{x:.*}", (16 - exp) as usize);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mant))
    }
}

fn trim_zeros(s: &str) -> &str {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0');
    t.strip_suffix('.').unwrap_or(t)
}

pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&real_text(x)).unwrap_or(Value::Null)
}

pub fn interval(iv: &Interval) -> Value {
    json!({ "lo": real(iv.lo), "hi": real(iv.hi), "lo_open": iv.lo_open, "hi_open": iv.hi_open })
}

pub fn intervals(set: &IntervalSet) -> Value {
    json!({ "intervals": set.intervals().iter().map(interval).collect::<Vec<_>>() })
}

pub fn sample(s: &SlopeSample) -> Value {
    json!({
        "family": s.family.to_string(),
        "m": s.m,
        "n": s.n,
        "param": real(s.param),
        "M": real(s.big_m),
        "L": real(s.l),
        "r": real(s.r),
        "y": real(s.y),
        "relation_residual": real(s.relation_residual),
        "relation_residual_rel": real(s.relation_residual_rel),
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "kind": w.kind.as_str(),
        "reduction": w.reduction.as_str(),
        "m": w.m,
        "n": w.n,
        "p": w.p,
        "q": w.q,
        "sample": w.sample.as_ref().map(sample),
        "scalar_residual": w.scalar_residual.map(real),
    })
}

fn failure(e: &Error) -> Value {
    match e {
        Error::ExactMismatch { id, point } => json!({ "id": id, "point": point }),
        e => json!({ "error": e.to_string() }),
    }
}

pub fn identity_report(r: &IdentityReport) -> Value {
    json!({
        "id": r.id.name(),
        "passed": r.passed,
        "trials": r.trials,
        "checks": r.checks,
        "failures": r.failures.iter().map(failure).collect::<Vec<_>>(),
    })
}

pub fn suite_report(r: &SuiteReport) -> Value {
    json!({
        "seed": r.seed,
        "passed": r.passed,
        "identities": r.reports.iter().map(identity_report).collect::<Vec<_>>(),
    })
}

pub fn scalar(key: &str, x: f64) -> Value {
    let mut m = Map::new();
    m.insert(key.into(), real(x));
    Value::Object(m)
}

pub const CSV_HEADER: [&str; 6] = ["family", "param", "M", "L", "r", "residual"];

pub fn csv_row(s: &SlopeSample) -> [String; 6] {
    [
        s.family.to_string(),
        real_text(s.param),
        real_text(s.big_m),
        real_text(s.l),
        real_text(s.r),
        real_text(s.relation_residual),
    ]
}
