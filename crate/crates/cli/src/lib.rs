//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use brieskorn::analysis::analyze_link;
use brieskorn::arith::{bp_group, BpGroupStatus};
use brieskorn::catalog::{run_catalog, Catalog};
use brieskorn::covers::{analyze_cover, make_cover};
use brieskorn::error::{Error, ErrorKind};
use brieskorn::json::big_uint;
use brieskorn::links::{
    link_from_exponents, link_from_weights, parse_list, ExponentVector, DEFAULT_SIGNATURE_BUDGET,
};
use brieskorn::orbifold::{bp_orbifold_order, profile, strata_json, WeightVector};
use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable read by the logger. It only changes diagnostics on stderr.
pub const LOG_ENV: &str = "BRIESKORN_LOG";

#[derive(Parser, Debug)]
#[command(
    name = "brieskorn",
    version,
    about = "Exact invariants of Brieskorn–Pham and weighted homogeneous links"
)]
struct Cli {
    /// Emit the JSON report envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress warnings on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Record wall-clock time in the report (makes output vary between runs).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of the group bP_N of homotopy spheres bounding parallelizable manifolds.
    BpOrder {
        /// Subscript N, at least 5.
        n: u32,
    },
    /// Single links.
    Link {
        #[command(subcommand)]
        action: LinkAction,
    },
    /// Cyclic branched covers z_0^p + f.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Weighted projective space data.
    Wps {
        #[command(subcommand)]
        action: WpsAction,
    },
    /// Batch cover analysis over a fixture file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum LinkAction {
    Analyze {
        #[command(flatten)]
        input: LinkInput,
        /// Maximum number of lattice points visited by the signature count.
        #[arg(long, default_value_t = DEFAULT_SIGNATURE_BUDGET)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct LinkInput {
    /// Brieskorn–Pham exponents, comma separated.
    #[arg(long, value_parser = list, conflicts_with_all = ["weights", "degree"])]
    exponents: Option<List>,
    /// Weights, comma separated (requires --degree).
    #[arg(long, value_parser = list, requires = "degree")]
    weights: Option<List>,
    #[arg(long, requires = "weights")]
    degree: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum CoverAction {
    Analyze {
        #[arg(long, value_parser = list)]
        weights: List,
        #[arg(long)]
        degree: u64,
        /// Branching order.
        #[arg(short)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum WpsAction {
    Info {
        #[arg(long, value_parser = list, required_unless_present = "exponents", conflicts_with = "exponents")]
        weights: Option<List>,
        /// Brieskorn–Pham exponents; also reports the singular strata.
        #[arg(long, value_parser = list, conflicts_with = "degree")]
        exponents: Option<List>,
        /// Hypersurface degree.
        #[arg(long)]
        degree: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    Run {
        path: PathBuf,
        /// Branching orders, comma separated.
        #[arg(short, value_parser = list)]
        p: List,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Comma-separated integers, parsed as one argument value.
#[derive(Clone, Debug)]
struct List(Vec<u64>);

fn list(s: &str) -> Result<List, String> {
    parse_list(s).map(List).map_err(|e| e.to_string())
}

fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Domain => 1,
        ErrorKind::Resource => 2,
        ErrorKind::Consistency => 3,
    }
}

fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Domain => "domain",
        ErrorKind::Resource => "resource",
        ErrorKind::Consistency => "consistency",
    }
}

struct Outcome {
    results: Value,
    warnings: Vec<String>,
    /// Worst per-item failure when the command itself succeeded.
    partial_failure: Option<ErrorKind>,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome {
            results,
            warnings: Vec::new(),
            partial_failure: None,
        }
    }
}

fn severity(kind: ErrorKind) -> u8 {
    exit_code(kind) as u8
}

fn bp_order(n: u32) -> Result<Outcome, Error> {
    let (group, order) = match bp_group(n)? {
        BpGroupStatus::Cyclic(order) => ("cyclic", big_uint(&order)),
        BpGroupStatus::Trivial => ("trivial", json!(1)),
        BpGroupStatus::Z2 => ("Z2", json!(2)),
        BpGroupStatus::ZeroOrZ2Unknown => ("0-or-Z2", Value::Null),
    };
    Ok(Outcome::ok(
        json!({ "n": n, "group": group, "order": order }),
    ))
}

fn link_analyze(input: &LinkInput, budget: u64) -> Result<Outcome, Error> {
    let link = match (&input.exponents, &input.weights, input.degree) {
        (Some(a), _, _) => link_from_exponents(&ExponentVector::new(a.0.clone())?)?,
        (None, Some(w), Some(d)) => link_from_weights(&w.0, d)?,
        _ => {
            return Err(Error::Domain(
                "give --exponents or --weights with --degree".into(),
            ))
        }
    };
    let analysis = analyze_link(&link, budget)?;
    Ok(Outcome {
        results: analysis.to_json(),
        warnings: analysis.warnings.clone(),
        partial_failure: None,
    })
}

fn cover_analyze(weights: &[u64], degree: u64, p: u64) -> Result<Outcome, Error> {
    let report = analyze_cover(&make_cover(weights, degree, p)?)?;
    let mut v = report.to_json();
    v["verdict"] = json!(report.sphere_class.as_ref().map(|c| c.verdict()));
    let mut warnings = Vec::new();
    if report.is_homotopy_sphere && report.sphere_class.is_none() {
        warnings
            .push("cover dimension is 3 mod 4: bP class needs a signature computation".to_string());
    }
    Ok(Outcome {
        results: v,
        warnings,
        partial_failure: None,
    })
}

fn wps_info(
    weights: &Option<List>,
    exponents: &Option<List>,
    degree: Option<u64>,
) -> Result<Outcome, Error> {
    match (weights, exponents) {
        (_, Some(a)) => {
            let a = ExponentVector::new(a.0.clone())?;
            let link = link_from_exponents(&a)?;
            let w = WeightVector::new(link.weights().to_vec())?;
            let mut v = profile(&w, Some(link.degree()))?.to_json();
            let (order, strata) = bp_orbifold_order(&a)?;
            let s = strata_json(order, &strata);
            v["orbifold_order"] = s["orbifold_order"].clone();
            v["strata"] = s["strata"].clone();
            v["exponents"] = json!(a.as_slice());
            Ok(Outcome::ok(v))
        }
        (Some(w), None) => Ok(Outcome::ok(
            profile(&WeightVector::new(w.0.clone())?, degree)?.to_json(),
        )),
        (None, None) => Err(Error::Domain("give --weights or --exponents".into())),
    }
}

fn catalog_cmd(path: &PathBuf, ps: &[u64], jobs: usize) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let catalog = Catalog::from_json(&text)?;
    if ps.is_empty() {
        return Err(Error::Domain(
            "-p needs at least one branching order".into(),
        ));
    }
    if let Some(&bad) = ps.iter().find(|&&p| p < 2) {
        return Err(Error::Domain(format!(
            "branching order p must be at least 2, got {bad}"
        )));
    }
    log::info!(
        "catalog {}: {} rows, p = {:?}, jobs = {jobs}",
        path.display(),
        catalog.rows.len(),
        ps
    );
    let out = run_catalog(&catalog, ps, jobs);
    let mut worst: Option<ErrorKind> = None;
    let rows: Vec<Value> = out
        .results
        .iter()
        .map(|r| match &r.outcome {
            Ok(v) => {
                let mut v = v.clone();
                v["row"] = json!(r.row);
                v["label"] = json!(catalog.rows[r.row].label);
                v
            }
            Err(e) => {
                if worst.is_none_or(|w| severity(e.kind()) > severity(w)) {
                    worst = Some(e.kind());
                }
                json!({
                    "row": r.row,
                    "p": r.p,
                    "label": catalog.rows[r.row].label,
                    "error": { "kind": kind_name(e.kind()), "message": e.to_string() },
                })
            }
        })
        .collect();
    let summary: Map<String, Value> = out
        .summary()
        .into_iter()
        .map(|(k, n)| (k, json!(n)))
        .collect();
    Ok(Outcome {
        results: json!({ "rows": rows, "summary": summary }),
        warnings: out.warnings,
        partial_failure: worst,
    })
}

fn dispatch(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::BpOrder { n } => bp_order(*n),
        Command::Link {
            action: LinkAction::Analyze { input, budget },
        } => link_analyze(input, *budget),
        Command::Cover {
            action: CoverAction::Analyze { weights, degree, p },
        } => cover_analyze(&weights.0, *degree, *p),
        Command::Wps {
            action:
                WpsAction::Info {
                    weights,
                    exponents,
                    degree,
                },
        } => wps_info(weights, exponents, *degree),
        Command::Catalog {
            action: CatalogAction::Run { path, p, jobs },
        } => catalog_cmd(path, &p.0, *jobs),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::BpOrder { .. } => "bp-order",
        Command::Link { .. } => "link analyze",
        Command::Cover { .. } => "cover analyze",
        Command::Wps { .. } => "wps info",
        Command::Catalog { .. } => "catalog run",
    }
}

/// Text form: one `path: value` line per scalar leaf of the JSON results.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push(format!("{prefix}: {}", parts.join(",")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push(format!("{prefix}: {}", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

/// Run the program on `argv` (including the program name) and return the exit status.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    init_logging();
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };

    let started = Instant::now();
    let outcome = dispatch(&cli.command);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut envelope = json!({
        "schema_version": SCHEMA_VERSION,
        "command": { "name": command_name(&cli.command), "argv": echo },
        "results": Value::Null,
        "warnings": [],
        "timing_ms": if cli.timing { json!(elapsed_ms) } else { Value::Null },
    });

    let code = match outcome {
        Ok(o) => {
            if !cli.quiet {
                for w in &o.warnings {
                    let _ = writeln!(stderr, "warning: {w}");
                }
            }
            envelope["warnings"] = json!(o.warnings);
            if cli.json {
                envelope["results"] = o.results;
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&envelope).expect("envelope serializes")
                );
            } else {
                let mut lines = Vec::new();
                flatten("", &o.results, &mut lines);
                for l in lines {
                    let _ = writeln!(stdout, "{l}");
                }
                if cli.timing {
                    let _ = writeln!(stdout, "timing_ms: {elapsed_ms:.3}");
                }
            }
            o.partial_failure.map(exit_code).unwrap_or(0)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if cli.json {
                envelope["error"] =
                    json!({ "kind": kind_name(e.kind()), "message": e.to_string() });
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&envelope).expect("envelope serializes")
                );
            }
            exit_code(e.kind())
        }
    };
    log::debug!("{} finished with status {code}", command_name(&cli.command));
    code
}
