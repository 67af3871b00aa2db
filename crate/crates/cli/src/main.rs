mod config;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use zgrade_core::identities::VerifyConfig;
use zgrade_core::{
    are_pi_equivalent, are_z_isomorphic, check_main_theorem, classification_report, find_witness,
    is_central_grading, min_bezout, parse_poly, scan, support_lattice, variety_of, verify_identity, Capacity,
    CentralityConfig, GradedPolynomial, GradingSpec, IsoDecision, MainTheoremConfig, Mode,
};

use config::{FileConfig, ModeName, OutputFormat};
use error::CliError;

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_GENS: u32 = 8;
const DEFAULT_MAX_LEN: usize = 3;
const DEFAULT_WINDOW: i64 = 6;
const DEFAULT_COUNT: usize = 3;
const DEFAULT_SAMPLES: u64 = 1000;
// Three disjoint monomials of degree +-6 need 18 generators of one class.
const CENTRAL_GENS: u32 = 40;
const CENTRAL_MAX_LEN: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "zgrade", version, about = "Z-gradings on the Grassmann algebra")]
struct Cli {
    /// Defaults file (key = value per line); also read from ZGRADE_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// json or text.
    #[arg(long, global = true)]
    output: Option<OutputFormat>,
    /// Seed for sampled verification; echoed in every output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Degrees {
    #[arg(short = 'm', allow_hyphen_values = true)]
    m: i64,
    #[arg(short = 'n', allow_hyphen_values = true)]
    n: i64,
}

#[derive(Debug, Args)]
struct Capacities {
    /// Capacity of the m class: a positive count or inf.
    #[arg(short = 'u', default_value = "inf")]
    u: String,
    /// Capacity of the n class.
    #[arg(short = 'v', default_value = "inf")]
    v: String,
}

#[derive(Debug, Args)]
struct Bounds {
    /// Generators e_1..e_N available to substitutions.
    #[arg(long)]
    gens: Option<u32>,
    #[arg(long = "max-len")]
    max_len: Option<usize>,
}

#[derive(Debug, Args)]
struct Window {
    /// Even degrees h with |h| <= window are checked.
    #[arg(long)]
    window: Option<i64>,
    /// Disjoint even-length monomials required per degree.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Grading, e.g. 2ind:-2,3 or Ektilde:2.
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    /// Polynomial, e.g. "[x1:2, x2:3]".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[command(flatten)]
    bounds: Bounds,
    /// exhaustive, sampled or targeted.
    #[arg(long)]
    mode: Option<ModeName>,
    /// Substitutions drawn in sampled mode.
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// m,n of the first grading.
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    /// m,n of the second grading.
    #[arg(long, allow_hyphen_values = true)]
    right: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Support of a 2-induced grading.
    Support {
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        capacities: Capacities,
    },
    /// Minimal Bezout coefficients and type.
    Bezout {
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Full classification report.
    Classify {
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        capacities: Capacities,
        /// Force JSON output.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check a graded identity on a truncation.
    Verify(IdentityArgs),
    /// Search for a nonzero substitution.
    Witness(IdentityArgs),
    /// Centrality check.
    Central {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// PI-equivalence and Z-isomorphism of two 2-induced gradings.
    Iso(PairArgs),
    /// PI-equivalence of two full-support 2-induced gradings.
    Equiv(PairArgs),
    /// Compare the Z verdict with the verdict of the mod-2 projection.
    Maintheo {
        #[command(flatten)]
        identity: IdentityArgs,
        #[command(flatten)]
        window: Window,
    },
    /// Support, type and variety over a grid of (m, n).
    Scan {
        /// Range of m, e.g. -9..-1.
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: String,
        /// Range of n, e.g. 1..9.
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: String,
    },
}

/// Flag values merged with the defaults file.
struct Settings {
    file: FileConfig,
    seed: u64,
    output: OutputFormat,
}

impl Settings {
    fn verify(&self, bounds: &Bounds, mode: Option<ModeName>, samples: Option<u64>) -> Result<VerifyConfig, CliError> {
        let generators = bounds.gens.or(self.file.gens).unwrap_or(DEFAULT_GENS);
        let max_len = bounds.max_len.or(self.file.max_len).unwrap_or(DEFAULT_MAX_LEN);
        let mode = match mode.or(self.file.mode).unwrap_or(ModeName::Exhaustive) {
            ModeName::Exhaustive => Mode::Exhaustive,
            ModeName::Targeted => Mode::Targeted,
            ModeName::Sampled => Mode::Sampled {
                seed: self.seed,
                count: samples.or(self.file.samples).unwrap_or(DEFAULT_SAMPLES),
            },
        };
        positive(generators as u64, "--gens")?;
        positive(max_len as u64, "--max-len")?;
        Ok(VerifyConfig {
            generators,
            max_len,
            mode,
        })
    }

    fn centrality(&self, window: &Window, bounds: &Bounds) -> Result<CentralityConfig, CliError> {
        let cfg = CentralityConfig {
            window: window.window.or(self.file.window).unwrap_or(DEFAULT_WINDOW),
            count: window.count.or(self.file.count).unwrap_or(DEFAULT_COUNT),
            generators: bounds.gens.or(self.file.gens).unwrap_or(CENTRAL_GENS),
            max_len: bounds.max_len.or(self.file.max_len).unwrap_or(CENTRAL_MAX_LEN),
        };
        if cfg.window < 0 {
            return Err(CliError::Usage("--window must be nonnegative".into()));
        }
        positive(cfg.count as u64, "--count")?;
        positive(cfg.generators as u64, "--gens")?;
        Ok(cfg)
    }
}

fn positive(value: u64, flag: &str) -> Result<(), CliError> {
    if value == 0 {
        Err(CliError::Usage(format!("{flag} must be positive")))
    } else {
        Ok(())
    }
}

fn capacity(text: &str) -> Result<Capacity, CliError> {
    Ok(text.parse::<Capacity>()?)
}

fn pair(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("expected m,n (for example -1,3), got '{text}'"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn range(text: &str) -> Result<std::ops::RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("expected a range like -9..-1, got '{text}'"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (lo, hi): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn grading(text: &str) -> Result<GradingSpec, CliError> {
    Ok(text.parse::<GradingSpec>()?)
}

fn polynomial(text: &str) -> Result<GradedPolynomial, CliError> {
    Ok(parse_poly(text)?)
}

/// What a command produced: a JSON payload, its text rendering, and the
/// exit status.
struct Report {
    command: &'static str,
    payload: Value,
    text: String,
    status: u8,
}

impl Report {
    fn ok(command: &'static str, payload: Value, text: String) -> Self {
        Report {
            command,
            payload,
            text,
            status: 0,
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Settings), CliError> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let settings = Settings {
        seed: cli.seed.or(file.seed).unwrap_or(0),
        output: cli.output.or(file.output).unwrap_or(OutputFormat::Json),
        file,
    };
    let report = match cli.command {
        Command::Support { degrees, capacities } => {
            let (u, v) = (capacity(&capacities.u)?, capacity(&capacities.v)?);
            let support = support_lattice(degrees.m, degrees.n, u, v)?;
            let mut payload = json!({
                "m": degrees.m,
                "n": degrees.n,
                "u": u,
                "v": v,
                "d": support.d,
                "lattice": support.lattice,
                "fullSupport": support.is_full(),
            });
            if support.is_full() {
                let (lo, hi) = (degrees.m.min(degrees.n), degrees.m.max(degrees.n));
                merge(&mut payload, serde_json::to_value(min_bezout(lo, hi)?).unwrap());
                payload["variety"] = json!(variety_of(lo, hi)?);
            }
            let text = render::fields(&payload);
            Report::ok("support", payload, text)
        }
        Command::Bezout { degrees } => {
            let data = min_bezout(degrees.m, degrees.n)?;
            let mut payload = json!({ "m": degrees.m, "n": degrees.n });
            merge(&mut payload, serde_json::to_value(data).unwrap());
            payload["variety"] = json!(variety_of(degrees.m, degrees.n)?);
            let text = render::fields(&payload);
            Report::ok("bezout", payload, text)
        }
        Command::Classify {
            degrees,
            capacities,
            json,
            window,
            bounds,
        } => {
            let cfg = settings.centrality(&window, &bounds)?;
            let (u, v) = (capacity(&capacities.u)?, capacity(&capacities.v)?);
            let report = classification_report(degrees.m, degrees.n, u, v, &cfg)?;
            let text = render::classification(&report);
            let mut out = Report::ok("classify", serde_json::to_value(&report).unwrap(), text);
            if json {
                out.text = String::new();
            }
            return Ok((out, Settings {
                output: if json { OutputFormat::Json } else { settings.output },
                ..settings
            }));
        }
        Command::Verify(args) => {
            let spec = grading(&args.spec)?;
            let f = polynomial(&args.poly)?;
            let cfg = settings.verify(&args.bounds, args.mode, args.samples)?;
            let verdict = verify_identity(&f, &spec, &cfg)?;
            let status = if verdict.holds() { 0 } else { 1 };
            let payload = json!({ "spec": spec.name(), "poly": f, "verdict": verdict });
            let text = render::verdict(&f, &spec, &verdict);
            Report {
                command: "verify",
                payload,
                text,
                status,
            }
        }
        Command::Witness(args) => {
            let spec = grading(&args.spec)?;
            let f = polynomial(&args.poly)?;
            let defaults = VerifyConfig::targeted_for(&f, &spec);
            let cfg = VerifyConfig {
                generators: args.bounds.gens.or(settings.file.gens).unwrap_or(defaults.generators),
                max_len: args.bounds.max_len.or(settings.file.max_len).unwrap_or(defaults.max_len),
                mode: Mode::Targeted,
            };
            let found = find_witness(&f, &spec, &cfg)?;
            let payload = json!({
                "spec": spec.name(),
                "poly": f,
                "generators": cfg.generators,
                "maxLen": cfg.max_len,
                "witness": found,
            });
            let text = render::witness(&f, &spec, found.as_ref(), &cfg);
            Report::ok("witness", payload, text)
        }
        Command::Central { spec, window, bounds } => {
            let spec = grading(&spec)?;
            let cfg = settings.centrality(&window, &bounds)?;
            let status = is_central_grading(&spec, &cfg)?;
            let payload = json!({ "spec": spec.name(), "central": status });
            let text = render::central(&spec, &status);
            Report::ok("central", payload, text)
        }
        Command::Iso(args) => {
            let ((m1, n1), (m2, n2)) = (pair(&args.left)?, pair(&args.right)?);
            let (left, right) = (GradingSpec::two_induced_infinite(m1, n1)?, GradingSpec::two_induced_infinite(m2, n2)?);
            let z_isomorphic = match are_z_isomorphic(&left, &right) {
                IsoDecision::Isomorphic => json!(true),
                IsoDecision::NotIsomorphic => json!(false),
                IsoDecision::Undecided => json!("undecided"),
            };
            let pi_equivalent = pi_equivalence(m1, n1, m2, n2).ok();
            let payload = json!({
                "left": { "m": m1, "n": n1 },
                "right": { "m": m2, "n": n2 },
                "piEquivalent": pi_equivalent,
                "zIsomorphic": z_isomorphic,
            });
            let text = render::fields(&payload);
            Report::ok("iso", payload, text)
        }
        Command::Equiv(args) => {
            let ((m1, n1), (m2, n2)) = (pair(&args.left)?, pair(&args.right)?);
            let equivalent = pi_equivalence(m1, n1, m2, n2)?;
            let payload = json!({
                "left": { "m": m1, "n": n1, "variety": variety_of(m1.min(n1), m1.max(n1))? },
                "right": { "m": m2, "n": n2, "variety": variety_of(m2.min(n2), m2.max(n2))? },
                "piEquivalent": equivalent,
            });
            let text = render::fields(&payload);
            Report::ok("equiv", payload, text)
        }
        Command::Maintheo { identity, window } => {
            let spec = grading(&identity.spec)?;
            let f = polynomial(&identity.poly)?;
            let cfg = MainTheoremConfig {
                verify: settings.verify(&identity.bounds, identity.mode, identity.samples)?,
                // --gens and --max-len bound the verification here.
                centrality: CentralityConfig {
                    generators: CENTRAL_GENS,
                    max_len: CENTRAL_MAX_LEN,
                    ..settings.centrality(&window, &Bounds { gens: Some(1), max_len: Some(1) })?
                },
            };
            let check = check_main_theorem(&f, &spec, &cfg)?;
            let status = if check.agrees { 0 } else { 1 };
            let text = render::main_theorem(&f, &spec, &check);
            Report {
                command: "maintheo",
                payload: json!({ "spec": spec.name(), "poly": f, "check": check }),
                text,
                status,
            }
        }
        Command::Scan { m, n } => {
            let rows = scan(range(&m)?, range(&n)?)?;
            let full = rows.iter().filter(|r| r.full_support).count();
            let v2 = rows
                .iter()
                .filter(|r| r.variety == Some(zgrade_core::Variety::V2))
                .count();
            let payload = json!({
                "cells": rows.len(),
                "fullSupport": full,
                "v1": full - v2,
                "v2": v2,
                "rows": rows,
            });
            let text = render::scan(&rows);
            Report::ok("scan", payload, text)
        }
    };
    Ok((report, settings))
}

fn pi_equivalence(m1: i64, n1: i64, m2: i64, n2: i64) -> Result<bool, CliError> {
    // Centrality plays no part in PI-equivalence; keep its check small.
    let cfg = CentralityConfig {
        window: 0,
        count: 1,
        generators: 4,
        max_len: 1,
    };
    let a = classification_report(m1, n1, Capacity::Infinite, Capacity::Infinite, &cfg)?;
    let b = classification_report(m2, n2, Capacity::Infinite, Capacity::Infinite, &cfg)?;
    Ok(are_pi_equivalent(&a, &b)?)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn envelope(report: &Report, seed: u64) -> Value {
    let mut out = json!({
        "schemaVersion": SCHEMA_VERSION,
        "command": report.command,
        "seed": seed,
    });
    merge(&mut out, report.payload.clone());
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, settings)) => {
            match settings.output {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&envelope(&report, settings.seed)).unwrap())
                }
                OutputFormat::Text => {
                    print!("{}", report.text);
                    println!("seed: {}", settings.seed);
                }
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
