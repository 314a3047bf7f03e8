use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ybrg::couplings::{rg_slope, Branch};
use ybrg::report::{write_atomic, Report};
use ybrg::suites::{self, ProfileKind, Suite, VerifyConfig};
use ybrg::traj::{self, TrajConfig};

const SEED_ENV: &str = "YBRG_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "ybrg",
    version,
    about = "Integrability checks for the anisotropic Kondo model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a JSON report
    Verify(VerifyArgs),
    /// Write an integrable coupling trajectory as CSV
    Traj(TrajArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,

    /// Anisotropy u, in (0, pi/2]
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    u: f64,

    /// Slope of the spectral function [default: -2u/pi]
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,

    /// Offset of the spectral function
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,

    /// System size
    #[arg(long = "L", default_value_t = 1.0, allow_negative_numbers = true)]
    length: f64,

    /// Number of particles for the transport and wavefunction checks
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=5))]
    n: u8,

    /// Pass threshold for the transport residuals
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, value_enum, default_value_t = ProfileKind::Linear)]
    profile: ProfileKind,

    /// Amplitude of the sine perturbation
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    eps: f64,

    /// Seed for the random sweeps (overridden by YBRG_SEED)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report path; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TrajArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    u: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t0: f64,

    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    t1: f64,

    /// Number of intervals; the file has samples + 1 rows
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    #[arg(long, default_value = "+", value_parser = parse_branch)]
    branch: Branch,

    /// SU(2) trajectory J = pi/t instead of the anisotropic family
    #[arg(long)]
    su2: bool,

    /// CSV path; stdout if omitted
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    match s {
        "+" => Ok(Branch::Plus),
        "-" => Ok(Branch::Minus),
        _ => Err(format!("expected + or -, got {s}")),
    }
}

fn emit(path: Option<&PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let seed = match std::env::var(SEED_ENV) {
        Ok(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("error: {SEED_ENV}={s:?} is not an unsigned integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => args.seed,
    };
    let cfg = VerifyConfig {
        suite: args.suite,
        u: args.u,
        a: args.a.unwrap_or_else(|| rg_slope(args.u)),
        c: args.c,
        length: args.length,
        n: args.n.into(),
        tol: args.tol,
        profile: args.profile,
        eps: args.eps,
        seed,
    };
    let report = Report::new(cfg.to_value(), suites::run(&cfg));
    for c in &report.checks {
        eprintln!(
            "{} {} value={:e} threshold={:e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        );
    }
    if let Err(e) = emit(args.out.as_ref(), report.to_json().as_bytes()) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(1);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn trajectory(args: TrajArgs) -> ExitCode {
    let cfg = TrajConfig {
        u: args.u,
        c: args.c,
        t0: args.t0,
        t1: args.t1,
        samples: args.samples as usize,
        branch: args.branch,
        su2: args.su2,
    };
    let rows = match traj::trajectory(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut buf = Vec::new();
    if let Err(e) = traj::write_csv(&rows, &mut buf) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if let Err(e) = emit(args.csv.as_ref(), &buf) {
        eprintln!("error: writing csv: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::Traj(args) => trajectory(args),
    }
}
