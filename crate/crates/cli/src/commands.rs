//! Subcommand bodies. Each returns a JSON document and an exit code.

use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use serde_json::{json, Value};
use tschirn_core::geometry::{
    adjunction_genus, cone_numerics, genus_formula, hypothesis_check, intersect, predict_thm_a, predict_thm_b,
    predict_tschirnhausen, pushforward_ok, CoverCase, DivisorClass, SurfaceModel,
};
use tschirn_core::instances::{random_instance, CoxCurve, PlaneCurve};
use tschirn_core::pipeline::{verify_curve, verify_plane, PipelineError, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(value: Value) -> Outcome {
        Outcome { value, exit_code: EXIT_OK }
    }

    pub fn usage(message: impl Into<String>) -> Outcome {
        Outcome { value: json!({ "error": "usage", "message": message.into() }), exit_code: EXIT_USAGE }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn error_outcome(err: &PipelineError) -> Outcome {
    let kind = match err {
        PipelineError::Singular(_) => "singular",
        PipelineError::Disconnected(_) => "disconnected",
        PipelineError::Instance(_) => "instance",
        PipelineError::Plane(_) => "plane",
        PipelineError::FuncField(_) | PipelineError::Birkhoff(_) => "contract_violation",
    };
    let mut value = json!({ "error": kind, "message": err.to_string() });
    match err {
        PipelineError::Singular(w) => value["witness"] = to_value(w),
        PipelineError::Disconnected(t) => value["splitting"] = to_value(t),
        _ => {}
    }
    Outcome { value, exit_code: err.exit_code() }
}

/// Runs `f` on a worker thread, giving up after `timeout_ms`.
pub fn with_timeout(timeout_ms: Option<u64>, f: impl FnOnce() -> Outcome + Send + 'static) -> Outcome {
    let Some(ms) = timeout_ms else { return f() };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(f());
    });
    match rx.recv_timeout(Duration::from_millis(ms)) {
        Ok(out) => out,
        Err(_) => Outcome {
            value: json!({ "error": "timeout", "message": format!("no result within {ms} ms") }),
            exit_code: EXIT_INTERNAL,
        },
    }
}

pub fn predict(m: i64, e: i64, delta: i64, gamma: u32) -> Outcome {
    if m < 2 || e < 1 || delta < 0 {
        return Outcome::usage(format!("need m >= 2, e >= 1, delta >= 0 (got m = {m}, e = {e}, delta = {delta})"));
    }
    let surface = SurfaceModel { gamma, e, delta };
    let class = DivisorClass::m_secant(m, e, delta);
    Outcome::ok(json!({
        "input": { "m": m, "e": e, "delta": delta, "gamma": gamma },
        "structure": predict_thm_a(m, e, delta, gamma).degrees,
        "twisted": predict_thm_b(m, e, delta, gamma).degrees,
        "tschirnhausen": predict_tschirnhausen(m, e, delta, gamma).degrees,
        "hypothesis": hypothesis_check(m, e, delta, gamma),
        "genus": adjunction_genus(class, &surface),
        "genus_formula": {
            "avoiding_vertex": genus_formula(m, e, gamma, CoverCase::A),
            "through_vertex": genus_formula(m, e, gamma, CoverCase::B),
        },
        "cone": {
            "avoiding_vertex": cone_numerics(m, e, gamma, CoverCase::A),
            "through_vertex": cone_numerics(m, e, gamma, CoverCase::B),
        },
    }))
}

fn report_outcome(r: Result<tschirn_core::pipeline::VerifyReport, PipelineError>) -> Outcome {
    match r {
        Ok(report) => {
            let exit_code = if report.all_match() { EXIT_OK } else { EXIT_INTERNAL };
            Outcome { value: to_value(&report), exit_code }
        }
        Err(e) => error_outcome(&e),
    }
}

pub fn verify_instance(curve: &CoxCurve, opts: &VerifyOptions) -> Outcome {
    report_outcome(verify_curve(curve, opts))
}

pub fn verify_generated(m: usize, e: i64, delta: i64, seed: u64, bound: i64, opts: &VerifyOptions) -> Outcome {
    match random_instance(m, e, delta, seed, bound) {
        Ok(g) => {
            let mut out = verify_instance(&g.curve, opts);
            out.value["instance"] = to_value(&g.curve);
            out.value["seed"] = json!(seed);
            out.value["rejections"] = json!(g.rejections);
            out
        }
        Err(e) => Outcome::usage(e.to_string()),
    }
}

pub fn verify_plane_curve(c: &PlaneCurve, opts: &VerifyOptions) -> Outcome {
    report_outcome(verify_plane(c, opts))
}

fn surface(e: i64, gamma: u32) -> Result<SurfaceModel, Outcome> {
    SurfaceModel::new(gamma, e, 0).map_err(|err| Outcome::usage(err.to_string()))
}

fn class(s: &str, e: i64) -> Result<DivisorClass, Outcome> {
    DivisorClass::parse(s, e).ok_or_else(|| Outcome::usage(format!("cannot parse divisor class {s:?}")))
}

pub fn intersect_classes(d1: &str, d2: &str, e: i64, gamma: u32) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let s = surface(e, gamma)?;
        let (a, b) = (class(d1, e)?, class(d2, e)?);
        Ok(Outcome::ok(json!({ "d1": a, "d2": b, "e": e, "gamma": gamma, "value": intersect(a, b, &s) })))
    };
    run().unwrap_or_else(|o| o)
}

pub fn pushforward(k: i64, e: i64) -> Outcome {
    if e < 1 {
        return Outcome::usage("need e >= 1");
    }
    let (direct, r1) = pushforward_ok(k, e);
    Outcome::ok(json!({ "k": k, "e": e, "direct": direct, "r1": r1 }))
}

pub fn adjunction(class_str: &str, e: i64, gamma: u32) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let s = surface(e, gamma)?;
        let d = class(class_str, e)?;
        Ok(Outcome::ok(json!({ "class": d, "e": e, "gamma": gamma, "genus": adjunction_genus(d, &s) })))
    };
    run().unwrap_or_else(|o| o)
}

/// Indented `key: value` lines for terminal reading.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Object(_) => None,
        Value::Array(items) if items.iter().any(|i| i.is_object()) => None,
        Value::Array(items) => {
            Some(format!("[{}]", items.iter().map(|i| inline(i).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match inline(val) {
                    Some(s) => out.push_str(&format!("{pad}{k:<20} {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        write_pretty(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                write_pretty(item, depth + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
