use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use resolvent_core::conegeom::{lemma1_subspace, lemma2_plane};
use resolvent_core::io as json_io;
use resolvent_core::numerics::scalar;
use resolvent_core::pipeline::{
    reduce_bring, reduce_theorem1, verify_report, ReductionReport, Verdict, THEOREM1_MIN_DEGREE,
};
use resolvent_core::trace::TraceStage;
use resolvent_core::tschirnhaus::transform;
use resolvent_core::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAIL: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_PRECISION: u8 = 4;

/// Tschirnhaus reductions of polynomial equations.
///
/// Exit codes: 0 success, 1 usage or I/O error, 2 verification failed,
/// 3 degenerate configuration after retries, 4 precision exhausted.
#[derive(Parser, Debug)]
#[command(name = "resolvent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output JSON file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for every random choice. Required by randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Working precision in bits (at least 64).
    #[arg(
        long,
        global = true,
        env = "RESOLVENT_PRECISION_BITS",
        default_value_t = 256
    )]
    precision_bits: u32,

    /// Verification tolerance; defaults to 2^(-precision_bits/2).
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Worker threads for batch inputs (a JSON array of items).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Kill C_1..C_5 of a degree n >= 21 polynomial.
    Reduce,
    /// Bring a quintic to z^5 + a z + 1.
    Bring,
    /// Apply a Tschirnhaus map: input {"polynomial": ..., "map": ...}.
    Transform,
    /// Common isotropic k-plane of two quadratic forms: input {"q1", "q2", "k"?}.
    Lemma1,
    /// 2-plane on a cubic cone in five variables: input a cubic form.
    Lemma2,
    /// Recheck a report (or an array of reports).
    Verify,
}

impl Command {
    fn randomized(self) -> bool {
        matches!(
            self,
            Command::Reduce | Command::Bring | Command::Lemma1 | Command::Lemma2
        )
    }
}

/// A failed item: message plus exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateConfiguration { .. }
            | Error::DegenerateSection(_)
            | Error::ZeroForm
            | Error::ZeroConstant
            | Error::DegreeMismatch { .. } => EXIT_DEGENERATE,
            Error::PrecisionExhausted(_) | Error::NoConvergence { .. } => EXIT_PRECISION,
            Error::NonSquarefree { .. } | Error::InvalidInput(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Result of one item: JSON to emit, an exit code, and text for stderr.
struct Outcome {
    value: Value,
    code: u8,
    summary: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    scalar::check_precision(cli.precision_bits)?;
    if cli.command.randomized() && cli.seed.is_none() {
        return Err(Failure::usage("--seed is required for this command"));
    }
    if cli.jobs == Some(0) {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let text = read_input(cli)?;
    let input: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("input is not JSON: {e}")))?;

    let outcomes: Vec<Outcome> = match &input {
        Value::Array(items) => {
            let work = || {
                items
                    .par_iter()
                    .map(|item| handle(cli, item))
                    .collect::<Vec<_>>()
            };
            match cli.jobs {
                Some(jobs) => rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| Failure::usage(format!("cannot start {jobs} workers: {e}")))?
                    .install(work),
                None => items.iter().map(|item| handle(cli, item)).collect(),
            }
        }
        single => vec![handle(cli, single)],
    };

    let batch = input.is_array();
    let mut code = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if batch {
            eprintln!("== item {i} ==");
        }
        eprint!("{}", o.summary);
        // failed batch items stay in place as {"error": ...}
        code = code.max(o.code);
    }
    // a single failing item reports like any other error: message, no JSON
    if !batch && outcomes[0].value.is_null() {
        return Ok(code);
    }
    let value = if batch {
        Value::Array(
            outcomes
                .into_iter()
                .map(|o| {
                    if o.value.is_null() {
                        json!({ "error": o.summary.trim_end() })
                    } else {
                        o.value
                    }
                })
                .collect(),
        )
    } else {
        outcomes.into_iter().next().unwrap().value
    };
    write_output(cli, &value)?;
    Ok(code)
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    match &cli.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(cli: &Cli, value: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write standard output: {e}"))),
    }
}

fn handle(cli: &Cli, item: &Value) -> Outcome {
    match dispatch(cli, item) {
        Ok(o) => o,
        Err(f) => Outcome {
            value: Value::Null,
            code: f.code,
            summary: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cli: &Cli, item: &Value) -> Result<Outcome, Failure> {
    let prec = cli.precision_bits;
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Reduce => {
            let f = json_io::poly_from_json(item, prec)?;
            if f.degree() < THEOREM1_MIN_DEGREE {
                return Err(Failure::usage(format!(
                    "reduce needs degree n >= {THEOREM1_MIN_DEGREE}, got {}; use `bring` for quintics",
                    f.degree()
                )));
            }
            Ok(report_outcome(
                reduce_theorem1(&f, seed, prec)?,
                cli.tolerance,
            ))
        }
        Command::Bring => {
            let f = json_io::poly_from_json(item, prec)?;
            Ok(report_outcome(reduce_bring(&f, seed, prec)?, cli.tolerance))
        }
        Command::Transform => {
            let f = json_io::poly_from_json(field(item, "polynomial")?, prec)?;
            let map = json_io::map_from_json(field(item, "map")?, prec)?;
            let te = transform(&f, &map)?;
            let summary = format!(
                "transformed degree {} with {} map coefficients\n",
                f.degree(),
                map.t().len()
            );
            Ok(Outcome {
                value: json_io::transformed_to_json(&te),
                code: 0,
                summary,
            })
        }
        Command::Lemma1 => {
            let q1 = json_io::quadratic_from_json(field(item, "q1")?, prec)?;
            let q2 = json_io::quadratic_from_json(field(item, "q2")?, prec)?;
            let k = match item.get("k") {
                Some(k) => k
                    .as_u64()
                    .ok_or_else(|| Failure::usage("k must be a positive integer"))?
                    as usize,
                None => q1.dim() / 3,
            };
            if k == 0 || q1.dim() != 3 * k || q2.dim() != 3 * k {
                return Err(Failure::usage(format!(
                    "lemma1 needs two forms of dimension 3k, got {} and {} with k = {k}",
                    q1.dim(),
                    q2.dim()
                )));
            }
            let (s, stages) = lemma1_subspace(&q1, &q2, k, seed)?;
            Ok(subspace_outcome(&s, &stages))
        }
        Command::Lemma2 => {
            let c = json_io::cubic_from_json(item.get("cubic").unwrap_or(item), prec)?;
            let (s, stages) = lemma2_plane(&c, seed)?;
            Ok(subspace_outcome(&s, &stages))
        }
        Command::Verify => {
            let report = json_io::report_from_json(item)?;
            let verdict = verify_report(&report, cli.tolerance);
            let code = if verdict.pass() { 0 } else { EXIT_VERIFY_FAIL };
            Ok(Outcome {
                value: verdict_to_json(&verdict),
                code,
                summary: format!("{verdict}\n"),
            })
        }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key)
        .ok_or_else(|| Failure::usage(format!("input is missing \"{key}\"")))
}

fn report_outcome(report: ReductionReport, tolerance: Option<f64>) -> Outcome {
    let verdict = verify_report(&report, tolerance);
    let mut summary = stage_table(&report.trace.stages);
    summary.push_str(&format!(
        "degree {} -> {} free coefficients, max |C_k| / R^k = {:.3e}\n{verdict}\n",
        report.input.degree(),
        report.parameter_count,
        report.vanished.iter().cloned().fold(0.0, f64::max),
    ));
    Outcome {
        value: json_io::report_to_json(&report),
        code: if verdict.pass() { 0 } else { EXIT_VERIFY_FAIL },
        summary,
    }
}

fn subspace_outcome(s: &resolvent_core::forms::LinearSubspace, stages: &[TraceStage]) -> Outcome {
    Outcome {
        value: json!({ "subspace": json_io::subspace_to_json(s), "stages": json_io::stages_to_json(stages) }),
        code: 0,
        summary: stage_table(stages),
    }
}

fn verdict_to_json(v: &Verdict) -> Value {
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "value": format!("{:e}", c.value),
                "threshold": format!("{:e}", c.threshold),
                "pass": c.pass,
            })
        })
        .collect();
    json!({ "pass": v.pass(), "checks": checks })
}

/// Stage table with the auxiliary-degree ledger up front.
fn stage_table(stages: &[TraceStage]) -> String {
    let mut out = format!(
        "{:<20} {:>6} {:>12} {:>10} {:>20}\n",
        "stage", "degree", "residual", "dims", "seed"
    );
    for s in stages {
        let degree = s
            .auxiliary_degree
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let dims = s
            .subspace_dims
            .map_or_else(|| "-".to_string(), |(a, b)| format!("{a}->{b}"));
        out.push_str(&format!(
            "{:<20} {:>6} {:>12.3e} {:>10} {:>20}\n",
            s.name, degree, s.residual, dims, s.seed_used
        ));
    }
    let mut degrees: Vec<usize> = stages.iter().filter_map(|s| s.auxiliary_degree).collect();
    let highest = degrees.iter().max().copied();
    degrees.sort_unstable();
    out.push_str(&format!(
        "auxiliary degrees: {degrees:?}, highest {highest:?}\n"
    ));
    out
}
