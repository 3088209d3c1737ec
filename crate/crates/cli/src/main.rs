//! `twistknot`: slope intervals, witnesses, sweeps, solver values and the
//! identity suite for the double twist knots `J(2m, 2n)`.
//!
//! Exit status: 0 on success, 1 on invalid input or a domain error, 2 when
//! an internal check fails.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use twistknot_core::slopes::{omega, solve_s0, theorem_intervals};
use twistknot_core::verify::{run_all, run_identity, IdentityId, Sampling, VerifyConfig, DEFAULT_SEED};
use twistknot_core::{find_witness, solve_x, sweep, Error, Family, GridSpec, Tol};

#[derive(Parser, Debug)]
#[command(name = "twistknot", version, about = "Surgery slopes of the double twist knots J(2m, 2n)")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The certified slope set of J(2m, 2n).
    Intervals {
        #[arg(short)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        /// Print JSON instead of interval notation.
        #[arg(long)]
        json: bool,
    },
    /// A representation certifying the slope P/Q.
    Witness {
        #[arg(short)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        /// Slope as a reduced fraction P/Q.
        #[arg(short, allow_hyphen_values = true, value_parser = parse_slope)]
        r: (i64, i64),
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Samples one representation family as CSV.
    Sweep {
        #[arg(long)]
        family: Family,
        #[arg(short)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        points: usize,
        /// Parameter range; the family default is used when absent.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Option<Vec<f64>>,
        /// Write CSV here and a JSON summary to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Runs the identity suite.
    Verify {
        #[arg(long)]
        id: Option<IdentityId>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, env = "DTS_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Deterministic grid points instead of random ones.
        #[arg(long)]
        grid: bool,
    },
    /// The constants s0(n) and omega(n).
    #[command(group(ArgGroup::new("which").required(true).args(["s0", "omega"])))]
    Solve {
        #[arg(long, value_name = "N")]
        s0: Option<i64>,
        #[arg(long, value_name = "N")]
        omega: Option<i64>,
    },
    /// The first root x of the Riley polynomial at fixed y.
    RileyRoots {
        #[arg(short)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        #[arg(short)]
        y: f64,
    },
}

fn parse_slope(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected P/Q, got {s:?}"))?;
    let p = p.trim().parse::<i64>().map_err(|e| format!("numerator: {e}"))?;
    let q = q.trim().parse::<i64>().map_err(|e| format!("denominator: {e}"))?;
    Ok((p, q))
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn print_json(v: &Value) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, v).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Returns whether the command succeeded without internal check failures.
fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Intervals { m, n, json } => {
            let set = theorem_intervals(m, n)?;
            if json {
                print_json(&output::intervals(&set))?;
            } else {
                println!("{set}");
            }
        }
        Command::Witness { m, n, r: (p, q), tol } => {
            let w = find_witness(m, n, p, q, &Tol::with_abs(tol))?;
            print_json(&output::witness(&w))?;
        }
        Command::Sweep { family, m, n, points, range, csv: path } => {
            let grid = match range.as_deref() {
                Some([lo, hi]) => GridSpec::with_range(points, *lo, *hi),
                _ => GridSpec::new(points),
            };
            let res = sweep(family, m, n, &grid)?;
            let sink: Box<dyn Write> = match &path {
                Some(p) => Box::new(std::fs::File::create(p)?),
                None => Box::new(std::io::stdout().lock()),
            };
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(output::CSV_HEADER)?;
            for s in &res.samples {
                w.write_record(output::csv_row(s))?;
            }
            w.flush()?;
            drop(w);
            for (p, e) in &res.errors {
                eprintln!("skipped parameter {}: {e}", output::real_text(*p));
            }
            if let Some(p) = path {
                print_json(&json!({
                    "family": family.to_string(),
                    "m": m,
                    "n": n,
                    "points": points,
                    "rows": res.samples.len(),
                    "skipped": res.errors.iter().map(|(p, e)| json!({ "param": output::real(*p), "error": e.to_string() })).collect::<Vec<_>>(),
                    "csv": p.display().to_string(),
                }))?;
            }
        }
        Command::Verify { id, trials, seed, grid } => {
            let cfg = VerifyConfig {
                trials,
                seed,
                sampling: if grid { Sampling::Grid } else { Sampling::Random },
                ..VerifyConfig::default()
            };
            let passed = match id {
                Some(id) => {
                    let r = run_identity(id, &cfg)?;
                    print_json(
                        &json!({ "seed": seed, "passed": r.passed, "identities": [output::identity_report(&r)] }),
                    )?;
                    r.passed
                }
                None => {
                    let r = run_all(&cfg)?;
                    print_json(&output::suite_report(&r))?;
                    r.passed
                }
            };
            return Ok(passed);
        }
        Command::Solve { s0, omega: om } => match (s0, om) {
            (Some(n), _) => print_json(&output::scalar("s0", solve_s0(n, &Tol::default())?))?,
            (_, Some(k)) => print_json(&output::scalar("omega", omega(k)?))?,
            _ => unreachable!("clap requires one of --s0, --omega"),
        },
        Command::RileyRoots { m, n, y } => {
            let rep = solve_x(m, n, y, &Tol::default())?;
            print_json(
                &json!({ "x": output::real(rep.x), "M": output::real(rep.big_m), "phi_residual": output::real(rep.phi_residual) }),
            )?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
