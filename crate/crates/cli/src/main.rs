use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::{error, info};

use ks2d::harness::{self, RunStatus, WORKERS_ENV};
use ks2d::{Error, RunConfig};

/// Pseudo-spectral integrator for the 2D Kuramoto–Sivashinsky family.
#[derive(Parser)]
#[command(name = "ks2d", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration into its output directory.
    Run { config: PathBuf },
    /// Run the configuration once per λ, each in `out_dir/lambda_<λ>`.
    Sweep {
        config: PathBuf,
        /// Comma-separated λ values, e.g. `1,2.5,4`.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        lambda: Vec<f64>,
    },
    /// Continue a run from one of its snapshots.
    Resume { snapshot: PathBuf, config: PathBuf },
    /// Recompute and print the criterion report of a run directory.
    Report { out_dir: PathBuf },
}

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_BLOWUP: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BlowUp(_) => EXIT_BLOWUP,
        e if e.is_config_error() => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

fn workers() -> Result<Option<usize>, Error> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(Some(w)),
            _ => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn run(config: &Path) -> Result<u8, Error> {
    let cfg = RunConfig::load(config)?;
    let out = harness::run_to_dir(&cfg)?;
    print!("{}", out.report);
    info!("artifacts written to {}", cfg.out_dir.display());
    Ok(0)
}

fn sweep(config: &Path, lambdas: &[f64]) -> Result<u8, Error> {
    let cfg = RunConfig::load(config)?;
    let rows = harness::sweep(&cfg, lambdas, workers()?)?;
    let mut code = 0;
    for row in &rows {
        println!("lambda = {:<10} {}", row.lambda, row.status.label());
        code = match (&row.status, code) {
            (RunStatus::Failed(msg), _) => {
                error!("lambda = {}: {msg}", row.lambda);
                EXIT_FAILURE
            }
            (RunStatus::BlowUp, c) if c != EXIT_FAILURE => EXIT_BLOWUP,
            (_, c) => c,
        };
    }
    println!("summary: {}", cfg.out_dir.join(harness::SUMMARY_FILE).display());
    Ok(code)
}

fn resume(snapshot: &Path, config: &Path) -> Result<u8, Error> {
    let cfg = RunConfig::load(config)?;
    let out = harness::resume(snapshot, &cfg)?;
    print!("{}", out.report);
    Ok(0)
}

fn report(out_dir: &Path) -> Result<u8, Error> {
    print!("{}", harness::report(out_dir)?);
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config } => run(config),
        Command::Sweep { config, lambda } => sweep(config, lambda),
        Command::Resume { snapshot, config } => resume(snapshot, config),
        Command::Report { out_dir } => report(out_dir),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            error!("{e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
