//! Command-line interface: `levels`, `spacings`, and `matrices` subcommands
//! over the report module. Data goes to stdout (or `--out`); diagnostics go
//! to stderr. Exit codes: 0 success, 2 configuration error, 3 physics or
//! numerical domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ncdirac::report::{self, RunConfig};
use ncdirac::{Error, PhysicalConstants, Result};

/// Relativistic spectrum of a hydrogen-like atom on noncommutative phase
/// space: exact Dirac-Coulomb energies plus first-order space-space (θ) and
/// momentum-momentum (θ̄) corrections.
#[derive(Parser)]
#[command(name = "ncdirac", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-sublevel level diagram with correction columns
    Levels(CommonArgs),
    /// The five n = 2 sublevel spacings, decomposed as A·|θ|/α³ + B·|θ̄|/α
    Spacings(CommonArgs),
    /// Raw Θ/Θ̄ secular-matrix entries for the configured levels
    Matrices(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Nuclear charge
    #[arg(long = "Z", value_name = "CHARGE")]
    z: Option<f64>,

    /// Level label like 2P3/2; repeatable
    #[arg(long = "level", value_name = "LABEL")]
    level: Vec<String>,

    /// |θ| in m², applied along the +z axis
    #[arg(long = "theta-m2", value_name = "M2")]
    theta_m2: Option<f64>,

    /// |θ̄| in the mirrored area convention, applied along the +z axis
    #[arg(long = "thetabar", value_name = "VALUE")]
    thetabar: Option<f64>,

    /// Scaling constant α in (0, 1]; omit to derive it from the constraint
    /// |θ||θ̄| = 4α²(1−α²)
    #[arg(long = "alpha", value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Coupling power of the α shift: quartic (default) or cubic
    #[arg(long = "alpha-form", value_name = "FORM")]
    alpha_form: Option<String>,

    /// Output format: csv or json
    #[arg(long = "format", value_name = "FMT")]
    format: Option<String>,

    /// Output path; stdout when omitted
    #[arg(long = "out", value_name = "PATH")]
    out: Option<PathBuf>,

    /// Config file with key = value lines; flags override it
    #[arg(long = "config", value_name = "FILE")]
    config: Option<PathBuf>,
}

impl CommonArgs {
    /// Config file (or defaults) with the flags layered on top.
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                report::parse_config(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(z) = self.z {
            cfg.z = z;
        }
        if !self.level.is_empty() {
            cfg.levels = self.level.clone();
        }
        if let Some(v) = self.theta_m2 {
            cfg.theta_m2 = v;
        }
        if let Some(v) = self.thetabar {
            cfg.thetabar = v;
        }
        if let Some(v) = self.alpha {
            cfg.alpha = Some(v);
        }
        if let Some(s) = &self.alpha_form {
            cfg.alpha_form = s.parse()?;
        }
        if let Some(s) = &self.format {
            cfg.format = s.parse()?;
        }
        if let Some(p) = &self.out {
            cfg.out = Some(p.clone());
        }
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> Result<()> {
    let args = match &cli.command {
        Command::Levels(a) | Command::Spacings(a) | Command::Matrices(a) => a,
    };
    let cfg = args.resolve()?;
    let c = PhysicalConstants::new();
    cfg.validate(&c)?;
    let text = match &cli.command {
        Command::Levels(_) => report::render_levels(&report::run(&cfg, &c)?, cfg.format),
        Command::Spacings(_) => {
            report::render_spacings(&report::run_spacings(&cfg, &c)?, cfg.format)
        }
        Command::Matrices(_) => {
            report::render_matrices(&report::run_matrices(&cfg, &c)?, cfg.format)
        }
    };
    report::write_output(&text, cfg.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
