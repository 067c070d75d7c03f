//! `qdsr`: canonical forms, first-class φ solutions and verification
//! reports from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
//! input (usage errors, unreadable or malformed files, invalid configs).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdsr::difference::AnyMatrixOp;
use qdsr::lattice::{solve_first_class_lattice, LatticeConfig};
use qdsr::loop_poisson::solve_first_class_loop;
use qdsr::report::{emit_report, exit_code, parse_report, run_suite, Format, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "qdsr", version, about = "Exact checks for q-difference Drinfeld-Sokolov reduction of SL2")]
struct Cli {
    /// Directory for written reports; stdout when unset.
    #[arg(long, global = true, env = "QDSR_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gauge normal form of a matrix operator (or a lattice-config point).
    Canonicalize {
        /// JSON input; `-` reads stdin.
        input: PathBuf,
    },
    /// Solve the first-class conditions for φ.
    SolvePhi {
        #[arg(long, value_enum)]
        case: Case,
        /// Loop modes `-range..=range`.
        #[arg(long, default_value_t = 8)]
        range: i64,
        /// Number of lattice sites.
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
    },
    /// Run a verification suite and emit its report.
    Verify(VerifyArgs),
    /// Re-render a saved JSON report.
    Report {
        /// A report written by `verify --format json`.
        input: PathBuf,
        #[arg(long, default_value = "md", value_parser = parse_format)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Case {
    Loop,
    Lattice,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long = "N", default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    mode_range: i64,
    #[arg(long, default_value_t = 25)]
    points: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Rational value of q for specialized spot checks, e.g. `2` or `-1/3`.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Lattice-config files whose points join the Jacobi check.
    #[arg(long = "point")]
    points_files: Vec<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: qdsr::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: qdsr::Error| e.to_string())
}

/// Bad input, reported with exit code 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

fn usage<T>(r: anyhow::Result<T>) -> Result<T, Usage> {
    r.map_err(Usage)
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {} as JSON", path.display()))
}

fn write_output(out_dir: Option<&Path>, name: &str, text: &str) -> anyhow::Result<()> {
    match out_dir {
        None => print!("{text}"),
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn canonicalize(input: &Path) -> anyhow::Result<Value> {
    let doc = read_json(input)?;
    let op = if doc.get("sites").is_some() {
        AnyMatrixOp::Lattice(LatticeConfig::from_json(&doc)?.to_matrix_op()?)
    } else {
        AnyMatrixOp::from_json(&doc)?
    };
    Ok(op.canonicalize_json()?)
}

fn solve_phi(case: Case, range: i64, n: usize) -> anyhow::Result<Value> {
    Ok(match case {
        Case::Loop => {
            if range < 0 {
                bail!("range must be nonnegative");
            }
            let (_, sols) = solve_first_class_loop(range)?;
            let phi: Vec<Value> = sols.iter().map(|s| json!({"m": s.m, "phi": s.phi.to_string()})).collect();
            json!({"case": "loop", "range": range, "phi": phi})
        }
        Case::Lattice => {
            let phi = solve_first_class_lattice(n)?;
            let values: Vec<String> = phi.values().iter().map(|v| v.to_string()).collect();
            json!({"case": "lattice", "N": n, "phi": values})
        }
    })
}

fn verify_config(args: VerifyArgs) -> anyhow::Result<SuiteConfig> {
    let q_specialization = args
        .q
        .map(|s| s.trim().parse().map_err(|e| anyhow::anyhow!("bad rational for --q {s:?}: {e}")))
        .transpose()?;
    let extra_points =
        args.points_files.iter().map(|p| Ok(LatticeConfig::from_json(&read_json(p)?)?)).collect::<anyhow::Result<_>>()?;
    let config = SuiteConfig {
        suite: args.suite,
        n: args.n,
        mode_range: args.mode_range,
        points: args.points,
        seed: args.seed,
        q_specialization,
        format: args.format,
        extra_points,
    };
    config.validate()?;
    Ok(config)
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Markdown => "md",
    }
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    let out_dir = cli.out_dir.as_deref();
    match cli.command {
        Command::Canonicalize { input } => {
            let v = usage(canonicalize(&input))?;
            usage(write_output(out_dir, "canonical.json", &pretty(&v)))?;
        }
        Command::SolvePhi { case, range, n } => {
            let v = usage(solve_phi(case, range, n))?;
            usage(write_output(out_dir, "phi.json", &pretty(&v)))?;
        }
        Command::Verify(args) => {
            let config = usage(verify_config(args))?;
            let results = usage(run_suite(&config).map_err(Into::into))?;
            let text = emit_report(&config, &results, config.format);
            let name = format!("report-{}-N{}-seed{}.{}", config.suite, config.n, config.seed, extension(config.format));
            usage(write_output(out_dir, &name, &text))?;
            return Ok(ExitCode::from(exit_code(&results) as u8));
        }
        Command::Report { input, format } => {
            let (config, results) = usage(read_json(&input).and_then(|d| Ok(parse_report(&d)?)))?;
            let text = emit_report(&config, &results, format);
            let name = format!("report-{}-N{}-seed{}.{}", config.suite, config.n, config.seed, extension(format));
            usage(write_output(out_dir, &name, &text))?;
            return Ok(ExitCode::from(exit_code(&results) as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
