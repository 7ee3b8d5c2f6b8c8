//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (a check that ran and
//! came back negative, or a math-level error while checking), 2 usage
//! (bad flags, out-of-range knobs, unknown tags or case ids), 3 I/O.
//! `SUBORDLAB_SEED` overrides `--seed` when set.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;

use crate::briot_bouquet::{bb_operator, bb_solve_from_target, check_admissibility, BBParams};
use crate::config::Config;
use crate::dominants::{boundary_curve, DominantSpec};
use crate::error::{Error, Result};
use crate::harness::{converse_of, find_case, persist_report, registry, run_trials, TrialReport};
use crate::integral_ops::{bernardi_general, OperatorParams};
use crate::series::TaylorSeries;
use crate::subordination::is_subordinate;
use crate::valued::ValuedSeries;

#[derive(Parser)]
#[command(
    name = "subordlab",
    version,
    about = "Series laboratory for differential subordination",
    max_term_width = 100
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Truncation order N, in [8, 512].
    #[arg(long, global = true, default_value_t = 64)]
    order: usize,
    /// Boundary samples M per circle, in [64, 16384].
    #[arg(long, global = true, default_value_t = 1024)]
    samples: usize,
    /// Verdict tolerance, in [1e-8, 1e-2].
    #[arg(long, global = true, default_value_t = 1e-4)]
    tol: f64,
    /// Base RNG seed; the SUBORDLAB_SEED environment variable wins.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also print case notes while verifying.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Subordination checks on stored series.
    Subord {
        #[command(subcommand)]
        action: SubordAction,
    },
    /// The series differential operator: apply, solve, or gate.
    Bb {
        #[command(subcommand)]
        action: BbAction,
    },
    /// Integral operators on stored series.
    Iop {
        #[command(subcommand)]
        action: IopAction,
    },
    /// Run registered cases and tally trial outcomes.
    Verify {
        /// Case id, or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        /// Trials per case.
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Search a case (or its converse) for counterexamples.
    Falsify {
        /// Case id.
        #[arg(long)]
        case: String,
        /// Attack the reversed implication instead of the case itself.
        #[arg(long)]
        converse: bool,
        /// Total evaluation budget.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Dump a dominant's boundary curve as CSV (theta,re,im).
    Curve {
        #[command(flatten)]
        dominant: DominantArgs,
        /// Circle radius, in [0.5, 1).
        #[arg(long, default_value_t = 0.999)]
        r: f64,
    },
}

#[derive(Subcommand)]
enum SubordAction {
    /// Check p < h for a stored series p and a catalogue dominant h.
    Check {
        /// JSON series file for p.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        dominant: DominantArgs,
    },
}

#[derive(Subcommand)]
enum BbAction {
    /// Evaluate p Q + z p' / (beta p + alpha) for stored p and Q.
    Apply {
        /// JSON series file for p.
        #[arg(long)]
        p: PathBuf,
        /// JSON series file for the weight Q.
        #[arg(long)]
        q: PathBuf,
        #[command(flatten)]
        eq: EquationArgs,
    },
    /// Recover p from a stored target of the operator.
    Solve {
        /// JSON series file for the target.
        #[arg(long)]
        target: PathBuf,
        /// JSON series file for the weight Q.
        #[arg(long)]
        q: PathBuf,
        #[command(flatten)]
        eq: EquationArgs,
    },
    /// Admissibility gate for a weight against a dominant.
    Check {
        /// JSON series file for the weight Q.
        #[arg(long)]
        q: PathBuf,
        #[command(flatten)]
        dominant: DominantArgs,
    },
}

#[derive(Subcommand)]
enum IopAction {
    /// Weighted Bernardi transform of stored valued series f and g.
    Apply {
        /// JSON valued-series file for f.
        #[arg(long)]
        f: PathBuf,
        /// JSON valued-series file for g.
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        eq: EquationArgs,
    },
}

#[derive(Args)]
struct EquationArgs {
    /// Equation parameter alpha.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Equation parameter beta.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Valuation multiplicity n.
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args)]
struct DominantArgs {
    /// Dominant tag: half-plane, sector, exp, sqrt-shift, janowski,
    /// sigmoid, exp-linear, crescent, slit-a, opendoor-a, opendoor-b.
    #[arg(long)]
    dominant: String,
    /// Sector exponent gamma.
    #[arg(long)]
    gamma: Option<f64>,
    /// Upper Moebius / slit coefficient A.
    #[arg(long)]
    a: Option<f64>,
    /// Lower Moebius coefficient B.
    #[arg(long)]
    b: Option<f64>,
    /// Open-door multiplicity n; doubles as the equation's n.
    #[arg(long)]
    n: Option<u32>,
    /// Open-door alpha; doubles as the equation's alpha.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Open-door beta; doubles as the equation's beta.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

impl DominantArgs {
    fn to_spec(&self) -> Result<DominantSpec> {
        let spec = match self.dominant.as_str() {
            "half-plane" => DominantSpec::HalfPlane,
            "sector" => DominantSpec::Sector {
                gamma: self.gamma.unwrap_or(0.5),
            },
            "exp" => DominantSpec::Exp,
            "sqrt-shift" => DominantSpec::SqrtShift,
            "janowski" => DominantSpec::Janowski {
                a: self.a.unwrap_or(1.0),
                b: self.b.unwrap_or(-1.0),
            },
            "sigmoid" => DominantSpec::Sigmoid,
            "exp-linear" => DominantSpec::ExpLinear,
            "crescent" => DominantSpec::Crescent,
            "slit-a" => DominantSpec::SlitA {
                a: self.a.unwrap_or(0.5),
            },
            "opendoor-a" => DominantSpec::OpenDoorA {
                n: self.n.unwrap_or(1),
                alpha: self.alpha,
                beta: self.beta,
            },
            "opendoor-b" => DominantSpec::OpenDoorB {
                n: self.n.unwrap_or(1),
                alpha: self.alpha,
                beta: self.beta,
            },
            other => {
                return Err(Error::InvalidParameter {
                    op: "dominant",
                    detail: format!("unknown dominant tag `{other}`"),
                })
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parse and run. Returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::IoFailure(_) => 3,
                Error::InvalidParameter { .. } | Error::UnknownCase { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = config_of(&cli.common)?;
    let seed = effective_seed(cli.common.seed)?;
    match cli.command {
        Command::Subord { action } => match action {
            SubordAction::Check { input, dominant } => {
                let p = read_series(&input)?;
                let h = dominant.to_spec()?;
                let verdict = is_subordinate(&p, &h, &cfg);
                emit(&cli.common, &pretty(&verdict)?)?;
                Ok(if verdict.holds.is_true() { 0 } else { 1 })
            }
        },
        Command::Bb { action } => match action {
            BbAction::Apply { p, q, eq } => {
                let out = bb_operator(&read_series(&p)?, &read_series(&q)?, &eq.params()?)?;
                emit(&cli.common, &pretty(&out)?)?;
                Ok(0)
            }
            BbAction::Solve { target, q, eq } => {
                let sol =
                    bb_solve_from_target(&read_series(&target)?, &read_series(&q)?, &eq.params()?)?;
                emit(&cli.common, &pretty(&sol)?)?;
                Ok(0)
            }
            BbAction::Check { q, dominant } => {
                let h = dominant.to_spec()?;
                let bb = BBParams::new(
                    C64::new(dominant.alpha, 0.0),
                    C64::new(dominant.beta, 0.0),
                    dominant.n.unwrap_or(1),
                )?;
                let report = check_admissibility(&h, &read_series(&q)?, &bb, &cfg);
                let payload = serde_json::json!({
                    "holds": report.holds,
                    "margin": report.margin,
                    "margin_resolvent": report.margin_resolvent,
                    "margin_coupled": report.margin_coupled,
                });
                emit(&cli.common, &pretty(&payload)?)?;
                Ok(if report.holds { 0 } else { 1 })
            }
        },
        Command::Iop { action } => match action {
            IopAction::Apply { f, g, eq } => {
                let params = OperatorParams::new(eq.alpha, eq.beta)?;
                let out = bernardi_general(&read_valued(&f)?, &read_valued(&g)?, &params)?;
                emit(&cli.common, &pretty(&out)?)?;
                Ok(0)
            }
        },
        Command::Verify { case, trials } => {
            let cases = if case == "all" {
                registry()
            } else {
                vec![find_case(&case)?]
            };
            let mut reports: Vec<TrialReport> = Vec::with_capacity(cases.len());
            let mut clean = true;
            for tc in &cases {
                let report = run_trials(tc, trials, seed, &cfg);
                let status = if report.failures == 0 { "pass" } else { "FAIL" };
                println!(
                    "{:16} {}  {} passes, {} inconclusive, {} failures, worst margin {:+.3e}, {:.2}s",
                    report.case_id,
                    status,
                    report.passes,
                    report.inconclusive,
                    report.failures,
                    report.worst_margin,
                    report.wall_time
                );
                if cli.common.verbose && !report.notes.is_empty() {
                    println!("    {}", report.notes);
                }
                clean &= report.failures == 0;
                reports.push(report);
            }
            if let Some(path) = &cli.common.out {
                if let [only] = reports.as_slice() {
                    persist_report(only, path)?;
                } else {
                    fs::write(path, pretty(&reports)?)?;
                }
            }
            Ok(if clean { 0 } else { 1 })
        }
        Command::Falsify {
            case,
            converse,
            budget,
        } => {
            let tc = if converse {
                converse_of(&case)?
            } else {
                find_case(&case)?
            };
            let report = crate::harness::falsify(&tc, budget, seed, &cfg);
            let status = if report.failures == 0 {
                "no counterexample"
            } else {
                "counterexample found"
            };
            println!(
                "{:24} {}  ({} evaluations, worst margin {:+.3e})",
                report.case_id, status, report.trials, report.worst_margin
            );
            if let Some(path) = &cli.common.out {
                persist_report(&report, path)?;
            }
            Ok(if report.failures == 0 { 0 } else { 1 })
        }
        Command::Curve { dominant, r } => {
            let h = dominant.to_spec()?;
            if !(0.5..1.0).contains(&r) {
                return Err(Error::InvalidParameter {
                    op: "curve",
                    detail: format!("radius {r} outside [0.5, 1)"),
                });
            }
            let curve = boundary_curve(&h, r, cfg.boundary_samples)?;
            let mut buf = Vec::new();
            curve.write_csv(&mut buf)?;
            let text = String::from_utf8(buf)
                .map_err(|e| Error::IoFailure(format!("csv encoding: {e}")))?;
            emit(&cli.common, &text)?;
            Ok(0)
        }
    }
}

impl EquationArgs {
    fn params(&self) -> Result<BBParams> {
        BBParams::new(C64::new(self.alpha, 0.0), C64::new(self.beta, 0.0), self.n)
    }
}

fn config_of(common: &CommonArgs) -> Result<Config> {
    let cfg = Config {
        order: common.order,
        boundary_samples: common.samples,
        tolerance: common.tol,
        ..Config::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn effective_seed(flag: u64) -> Result<u64> {
    match std::env::var("SUBORDLAB_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| Error::InvalidParameter {
            op: "seed",
            detail: format!("SUBORDLAB_SEED=`{text}` is not an unsigned integer"),
        }),
        Err(_) => Ok(flag),
    }
}

fn read_series(path: &Path) -> Result<TaylorSeries> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn read_valued(path: &Path) -> Result<ValuedSeries> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn pretty<S: serde::Serialize>(value: &S) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn emit(common: &CommonArgs, payload: &str) -> Result<()> {
    match &common.out {
        Some(path) => Ok(fs::write(path, payload)?),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(payload.as_bytes())?;
            Ok(lock.flush()?)
        }
    }
}
