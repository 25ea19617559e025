mod config;
mod report;
mod runs;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use symcone_core::{GeomError, RawCubicTensor};

use config::{ConfigArgs, RunOpts};
use report::Report;

#[derive(Parser)]
#[command(
    name = "symcone",
    version,
    about = "Invariant geometry on the SPD cone: verification, decomposition, dimensions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification suite and emit a report.
    Verify(VerifyCmd),
    /// Decompose a frozen cubic tensor file into a power-sum polynomial.
    Decompose(DecomposeCmd),
    /// Tabulate the dimension of the invariant cubic space per order.
    Dims(DimsCmd),
    /// Compare Monte Carlo score moments against the closed forms.
    McCheck(McCheckCmd),
}

#[derive(Args)]
struct VerifyCmd {
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct DecomposeCmd {
    /// Tensor JSON file ({"n", "valence", "basis", "entries"}).
    input: PathBuf,
    /// Write the polynomial JSON here when the decomposition succeeds.
    #[arg(long)]
    poly_out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct DimsCmd {
    /// Largest matrix order to tabulate.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=64))]
    max_n: u64,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct McCheckCmd {
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug)]
enum AppError {
    Usage(String),
    Runtime(GeomError),
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Runtime(e) => write!(f, "{e}"),
        }
    }
}

impl From<GeomError> for AppError {
    fn from(e: GeomError) -> Self {
        AppError::Runtime(e)
    }
}

/// Errors meaning the numbers themselves gave out, as opposed to bad input.
fn is_breakdown(e: &GeomError) -> bool {
    matches!(
        e,
        GeomError::StepExitsCone { .. }
            | GeomError::DegenerateGram { .. }
            | GeomError::Singular { .. }
            | GeomError::NotPositiveDefinite { .. }
            | GeomError::NonFinite { .. }
    )
}

fn exit_code(e: &AppError) -> i32 {
    match e {
        AppError::Usage(_) => 2,
        AppError::Runtime(g) if is_breakdown(g) => 3,
        AppError::Runtime(_) => 2,
    }
}

fn emit(report: &Report, opts: &RunOpts) -> Result<(), AppError> {
    let rendered = report.render(opts.format);
    match &opts.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| AppError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, AppError> {
    match cli.cmd {
        Cmd::Verify(c) => {
            let (cfg, opts) = c.config.build().map_err(AppError::Usage)?;
            let report = runs::run_verify(&cfg, &opts)?;
            emit(&report, &opts)?;
            Ok(report.overall_pass)
        }
        Cmd::Decompose(c) => {
            let (cfg, opts) = c.config.build().map_err(AppError::Usage)?;
            let text = std::fs::read_to_string(&c.input)
                .map_err(|e| AppError::Usage(format!("cannot read {}: {e}", c.input.display())))?;
            let raw: RawCubicTensor = serde_json::from_str(&text).map_err(|e| {
                AppError::Usage(format!("bad tensor file {}: {e}", c.input.display()))
            })?;
            let (report, poly) = runs::run_decompose(&cfg, &opts, &raw)?;
            if let (Some(path), Some(poly)) = (&c.poly_out, &poly) {
                let mut body = serde_json::to_string_pretty(poly)
                    .expect("polynomial serializes");
                body.push('\n');
                std::fs::write(path, body).map_err(|e| {
                    AppError::Usage(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            emit(&report, &opts)?;
            Ok(report.overall_pass)
        }
        Cmd::Dims(c) => {
            let (cfg, opts) = c.config.build().map_err(AppError::Usage)?;
            let report = runs::run_dims(&cfg, c.max_n as usize)?;
            emit(&report, &opts)?;
            Ok(report.overall_pass)
        }
        Cmd::McCheck(c) => {
            let (cfg, opts) = c.config.build().map_err(AppError::Usage)?;
            let report = runs::run_mc_check(&cfg, &opts)?;
            emit(&report, &opts)?;
            Ok(report.overall_pass)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
