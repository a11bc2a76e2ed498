//! `tfcompass`: reproducible numerical experiments on the transverse-field
//! compass chain.

mod compare;
mod config;
mod error;
mod experiments;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use tfcompass::solver::LiftDirection;
use tfcompass::Boundary;

use config::{defaults, ConfigFile, Experiment, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "tfcompass", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form ground energy vs ED over an α sweep.
    GsEnergy(RunOpts),
    /// Quasiparticle branches; full 16-level check when N' = 2.
    Spectrum(RunOpts),
    /// Excitation gap vs h, with an ED column for small chains.
    Gap(RunOpts),
    /// Ground-state fidelity over an (α, h) grid.
    FidelityMap(RunOpts),
    /// Fidelity susceptibility vs h.
    FsScan(RunOpts),
    /// Fidelity-susceptibility finite-size scaling (ν, μ).
    FsScaling(RunOpts),
    /// Nearest-neighbour concurrence over (α, h).
    Concurrence(RunOpts),
    /// Block entanglement entropy and central-charge fit.
    Entropy(RunOpts),
    /// String correlator and its power-law fit.
    Correlator(RunOpts),
    /// Magnetisation, susceptibility and the γ fit.
    Magnetization(RunOpts),
    /// Cross-check the free-fermion results against ED.
    OracleValidate(RunOpts),
    /// Transverse-field Ising reference chain and γ comparison.
    IsingCheck(RunOpts),
    /// Compare two CSV outputs of the same configuration.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Maximum tolerated absolute difference.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
}

impl Command {
    fn experiment(&self) -> Option<(Experiment, &RunOpts)> {
        use Command::*;
        Some(match self {
            GsEnergy(o) => (Experiment::GsEnergy, o),
            Spectrum(o) => (Experiment::Spectrum, o),
            Gap(o) => (Experiment::Gap, o),
            FidelityMap(o) => (Experiment::FidelityMap, o),
            FsScan(o) => (Experiment::FsScan, o),
            FsScaling(o) => (Experiment::FsScaling, o),
            Concurrence(o) => (Experiment::Concurrence, o),
            Entropy(o) => (Experiment::Entropy, o),
            Correlator(o) => (Experiment::Correlator, o),
            Magnetization(o) => (Experiment::Magnetization, o),
            OracleValidate(o) => (Experiment::OracleValidate, o),
            IsingCheck(o) => (Experiment::IsingCheck, o),
            Compare { .. } => return None,
        })
    }
}

#[derive(Args, Debug)]
struct RunOpts {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    h: Option<f64>,
    #[arg(long)]
    j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Number of two-site unit cells N'.
    #[arg(long)]
    n_cells: Option<usize>,
    #[arg(long, value_parser = parse_bc)]
    bc: Option<Boundary>,
    #[arg(long, value_parser = parse_lift)]
    lift: Option<LiftDirection>,
    /// Finite-difference step.
    #[arg(long)]
    delta: Option<f64>,
}

fn parse_bc(s: &str) -> Result<Boundary, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

fn parse_lift(s: &str) -> Result<LiftDirection, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

impl RunOpts {
    fn as_config(&self) -> ConfigFile {
        let mut c = ConfigFile::default();
        c.params.alpha = self.alpha;
        c.params.h = self.h;
        c.params.j = self.j;
        c.params.beta = self.beta;
        c.params.n_cells = self.n_cells;
        c.params.bc = self.bc;
        c.params.lift = self.lift;
        c.fit.delta = self.delta;
        c.output = self.out.clone();
        c
    }
}

fn run(experiment: Experiment, opts: &RunOpts) -> Result<(), CliError> {
    let mut cfg = defaults(experiment);
    if let Some(path) = &opts.config {
        let file = ConfigFile::load(path)?;
        if let Some(e) = file.experiment {
            if e != experiment {
                return Err(CliError::config(format!(
                    "config is for experiment {}, not {}",
                    e.name(),
                    experiment.name()
                )));
            }
        }
        cfg = cfg.overlay(file);
    }
    let cfg = cfg.overlay(opts.as_config());
    let (rc, out_dir) = RunConfig::resolve(cfg, opts.seed)?;
    if let Some(n) = opts.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("--threads: {e}")))?;
    }
    let start = Instant::now();
    let out = experiments::run(&rc)?;
    let files = output::write_all(&out_dir, &rc, &out, start.elapsed().as_secs_f64())?;
    for f in &files {
        println!("{}", f.display());
    }
    match out.failure {
        Some(msg) => Err(CliError::Numerical(msg)),
        None => Ok(()),
    }
}

fn compare_files(a: &Path, b: &Path, tol: f64) -> Result<(), CliError> {
    let c = compare::compare(&compare::read_csv(a)?, &compare::read_csv(b)?)?;
    println!(
        "{}",
        serde_json::to_string(&c).map_err(|e| CliError::Io(e.to_string()))?
    );
    if c.max_abs_diff > tol {
        return Err(CliError::Numerical(format!(
            "max abs difference {:.3e} exceeds {tol:.1e}",
            c.max_abs_diff
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.command, cli.command.experiment()) {
        (Command::Compare { a, b, tol }, _) => compare_files(a, b, *tol),
        (_, Some((experiment, opts))) => run(experiment, opts),
        (_, None) => unreachable!("every non-compare subcommand is an experiment"),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
