//! Plain-text views of the JSON reports.

use std::fmt::Write;

use serde_json::Value;
use zgrade_core::identities::{Refutation, VerifyConfig};
use zgrade_core::{
    CentralStatus, ClassificationReport, GradedPolynomial, GradingSpec, MainTheoremCheck, NotCentralReason, ScanRow,
    Variety, Verdict,
};

/// `key: value` lines for the top-level fields.
pub fn fields(payload: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = payload {
        let width = map.keys().map(String::len).max().unwrap_or(0);
        for (key, value) in map {
            let shown = match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "{key:width$}  {shown}").unwrap();
        }
    }
    out
}

fn central_line(status: &CentralStatus) -> String {
    match status {
        CentralStatus::Central(c) => format!(
            "yes (window {}, count {}, N {}, max_len {})",
            c.window, c.count, c.generators, c.max_len
        ),
        CentralStatus::NotCentral { reason, config } => match reason {
            NotCentralReason::NoFullSupport => "no (support is not Z)".to_string(),
            NotCentralReason::MissingFamily { degree, found } => format!(
                "not certified: degree {degree} has {found} of {} disjoint even-length monomials (N {}, max_len {})",
                config.count, config.generators, config.max_len
            ),
        },
    }
}

pub fn classification(r: &ClassificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "E_({},{})^({},{})", r.m, r.n, r.u, r.v).unwrap();
    writeln!(out, "  support   {} (d = {})", r.support.lattice, r.support.d).unwrap();
    match &r.bezout {
        Some(b) => writeln!(
            out,
            "  type      {}  (alpha, beta, alpha', beta') = ({}, {}, {}, {})",
            b.grading_type, b.alpha, b.beta, b.alpha_prime, b.beta_prime
        )
        .unwrap(),
        None => writeln!(out, "  type      -").unwrap(),
    }
    match (&r.variety, &r.pi_representative) {
        (Some(v), Some(rep)) => writeln!(out, "  variety   {v}, PI-equivalent to {rep}").unwrap(),
        _ => writeln!(out, "  variety   -").unwrap(),
    }
    writeln!(out, "  central   {}", central_line(&r.central)).unwrap();
    out
}

pub fn verdict(f: &GradedPolynomial, spec: &GradingSpec, verdict: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "{f} on {spec}").unwrap();
    match verdict {
        Verdict::Holds(h) => {
            write!(
                out,
                "holds on E({}) up to length {}: {} substitutions",
                h.generators, h.max_len, h.substitutions_checked
            )
            .unwrap();
            if h.empty_component {
                write!(out, " (some variable has no monomial of its degree)").unwrap();
            }
            writeln!(out).unwrap();
        }
        Verdict::Fails(r) => {
            writeln!(out, "fails").unwrap();
            refutation(&mut out, r);
        }
    }
    out
}

fn refutation(out: &mut String, r: &Refutation) {
    for w in &r.witness {
        writeln!(out, "  {} = {}", w.label, w.monomial).unwrap();
    }
    writeln!(out, "  value {}", r.value).unwrap();
}

pub fn witness(f: &GradedPolynomial, spec: &GradingSpec, found: Option<&Refutation>, cfg: &VerifyConfig) -> String {
    let mut out = String::new();
    writeln!(out, "{f} on {spec}, N = {}, max_len = {}", cfg.generators, cfg.max_len).unwrap();
    match found {
        Some(r) => refutation(&mut out, r),
        None => writeln!(out, "no witness within these bounds").unwrap(),
    }
    out
}

pub fn central(spec: &GradingSpec, status: &CentralStatus) -> String {
    format!("{spec}: central {}\n", central_line(status))
}

pub fn main_theorem(f: &GradedPolynomial, spec: &GradingSpec, check: &MainTheoremCheck) -> String {
    format!(
        "{f} on {spec}\n  Z:  {}\n  Z2: {}\n  agree: {}\n",
        if check.z_verdict.holds() { "holds" } else { "fails" },
        if check.z2_verdict.holds() { "holds" } else { "fails" },
        check.agrees
    )
}

/// Grid with one row per m: `V1`/`V2` for full support, `dZ` otherwise.
pub fn scan(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    let mut ns: Vec<i64> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    write!(out, "{:>5}", "m\\n").unwrap();
    for n in &ns {
        write!(out, "{n:>5}").unwrap();
    }
    writeln!(out).unwrap();
    let mut current = None;
    for r in rows {
        if current != Some(r.m) {
            if current.is_some() {
                writeln!(out).unwrap();
            }
            write!(out, "{:>5}", r.m).unwrap();
            current = Some(r.m);
        }
        let cell = match r.variety {
            Some(Variety::V1) => "V1".to_string(),
            Some(Variety::V2) => "V2".to_string(),
            None => format!("{}Z", r.gcd),
        };
        write!(out, "{cell:>5}").unwrap();
    }
    if current.is_some() {
        writeln!(out).unwrap();
    }
    writeln!(out, "V2 exactly when m and n are both odd; V1 for the other coprime pairs").unwrap();
    out
}
