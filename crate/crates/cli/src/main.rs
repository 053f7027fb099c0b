//! Command-line front end: sweeps the Gaussian and binary
//! distortion–equivocation curves to CSV, runs the random-coding simulator
//! to JSON, and classifies scenarios. Output files are byte-deterministic
//! for a fixed config and seed.

mod config;
mod output;

use clap::{Parser, Subcommand};
use config::ConfigError;
use secrecylab_core::binary::{self, BinarySetup};
use secrecylab_core::curve::Scheme;
use secrecylab_core::gaussian::{self, GaussianSetup};
use secrecylab_core::sim::{run_experiment, SimConfig};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "secrecylab",
    version,
    about = "Distortion-equivocation regions of secure transmission schemes, plus a random-coding simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Gaussian wiretap region over a distortion grid (CSV)
    GaussianSweep(GaussianSweepArgs),
    /// Sweep the binary wiretap region over an erasure-probability grid (CSV)
    BinarySweep(BinarySweepArgs),
    /// Run the hybrid random-coding Monte Carlo experiment (JSON)
    Simulate(SimulateArgs),
    /// Classify a scenario's side-information / separation regime (JSON)
    Classify(ClassifyArgs),
}

#[derive(clap::Args)]
struct GaussianSweepArgs {
    /// Flat JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Channel input power P
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Bob channel noise power P_Y
    #[arg(long, allow_negative_numbers = true)]
    p_y: Option<f64>,
    /// Eve channel noise power P_Z
    #[arg(long, allow_negative_numbers = true)]
    p_z: Option<f64>,
    /// Eve side-information noise power P_E
    #[arg(long, allow_negative_numbers = true)]
    p_e: Option<f64>,
    /// Bob side-information noise power P_B (omit for no side information)
    #[arg(long, allow_negative_numbers = true)]
    p_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d_stop: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d_step: Option<f64>,
    /// Comma-separated scheme list (optimal,digital,analog,timeshare)
    #[arg(long)]
    schemes: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BinarySweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Eve side-information crossover probability ε
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    /// Eve channel crossover probability ζ
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_stop: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_step: Option<f64>,
    /// Comma-separated scheme list (digital,hybrid,analog,outer)
    #[arg(long)]
    schemes: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Blocklength
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rf: Option<f64>,
    /// Typicality slack δ (default 2/√n)
    #[arg(long, allow_negative_numbers = true)]
    typicality_slack: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Bob side-information erasure probability β
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    /// Hybrid noise crossover u
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Binary scenario: erasure probability β (with --eps)
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    /// Gaussian scenario: noise powers (any of these selects it)
    #[arg(long, allow_negative_numbers = true)]
    p_y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p_z: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p_e: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p_b: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(()) => 0,
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(RunError::Internal(e)) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}

enum RunError {
    Config(String),
    Internal(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e.0)
    }
}

impl From<gaussian::GaussianError> for RunError {
    fn from(e: gaussian::GaussianError) -> Self {
        match e {
            gaussian::GaussianError::NonPositivePower { .. }
            | gaussian::GaussianError::ChannelOrder { .. }
            | gaussian::GaussianError::UnsupportedFinitePb
            | gaussian::GaussianError::DistortionOutOfRange { .. } => {
                RunError::Config(e.to_string())
            }
            _ => RunError::Internal(e.to_string()),
        }
    }
}

impl From<binary::BinaryError> for RunError {
    fn from(e: binary::BinaryError) -> Self {
        match e {
            binary::BinaryError::ParamOutOfRange { .. }
            | binary::BinaryError::SchemeNotAvailable(_) => RunError::Config(e.to_string()),
            binary::BinaryError::Info(_) => RunError::Internal(e.to_string()),
        }
    }
}

impl From<secrecylab_core::sim::SimError> for RunError {
    fn from(e: secrecylab_core::sim::SimError) -> Self {
        match e {
            secrecylab_core::sim::SimError::Binary(inner) => RunError::from(inner),
            _ => RunError::Config(e.to_string()),
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::GaussianSweep(args) => gaussian_sweep(args),
        Command::BinarySweep(args) => binary_sweep(args),
        Command::Simulate(args) => simulate(args),
        Command::Classify(args) => classify(args),
    }
}

fn parse_schemes(list: &str) -> Result<Vec<Scheme>, ConfigError> {
    list.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<Scheme>()
                .map_err(|e| ConfigError(format!("schemes: {e}")))
        })
        .collect()
}

fn write_out(path: Option<&PathBuf>, contents: &str) -> Result<(), RunError> {
    match path {
        Some(path) => std::fs::write(path, contents)
            .map_err(|e| RunError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn gaussian_sweep(args: GaussianSweepArgs) -> Result<(), RunError> {
    let file: config::GaussianFileConfig = config::load_file(args.config.as_deref())?;
    let p = config::require_positive("P", args.p.or(file.p).unwrap_or(1.0))?;
    let p_y = config::require_positive("P_Y", args.p_y.or(file.p_y).unwrap_or(0.5))?;
    let p_z = config::require_positive("P_Z", args.p_z.or(file.p_z).unwrap_or(1.0))?;
    let p_e = config::require_positive("P_E", args.p_e.or(file.p_e).unwrap_or(1.0))?;
    let p_b = match args.p_b.or(file.p_b) {
        Some(v) => Some(config::require_positive("P_B", v)?),
        None => None,
    };
    let setup = GaussianSetup::new(p, p_y, p_z, p_e, p_b)?;

    let d_start = args
        .d_start
        .or(file.d_start)
        .unwrap_or(setup.min_distortion());
    let d_stop = args.d_stop.or(file.d_stop).unwrap_or(1.0);
    let d_step = args.d_step.or(file.d_step).unwrap_or(0.01);
    let grid = config::grid(d_start, d_stop, d_step)?;

    let schemes = match args.schemes.or(file.schemes) {
        Some(s) => parse_schemes(&s)?,
        None => vec![
            Scheme::Optimal,
            Scheme::Digital,
            Scheme::Analog,
            Scheme::Timeshare,
        ],
    };
    // sweeps are fully deterministic; the seed is accepted for interface
    // uniformity and has no effect
    let _ = args.seed.or(file.seed);
    let curves = gaussian::sweep(&setup, &grid, &schemes)?;
    let csv = output::curves_to_csv(&curves);
    let out = args.out.or(file.out.map(PathBuf::from));
    write_out(out.as_ref(), &csv)
}

fn binary_sweep(args: BinarySweepArgs) -> Result<(), RunError> {
    let file: config::BinaryFileConfig = config::load_file(args.config.as_deref())?;
    let eps = args.eps.or(file.eps).unwrap_or(0.1);
    let zeta = args.zeta.or(file.zeta).unwrap_or(0.1);
    let template = BinarySetup::new(0.0, eps, zeta)?;

    let beta_start = args.beta_start.or(file.beta_start).unwrap_or(0.0);
    let beta_stop = args.beta_stop.or(file.beta_stop).unwrap_or(0.99);
    let beta_step = args.beta_step.or(file.beta_step).unwrap_or(0.01);
    let grid = config::grid(beta_start, beta_stop, beta_step)?;

    let schemes = match args.schemes.or(file.schemes) {
        Some(s) => parse_schemes(&s)?,
        None => vec![
            Scheme::Digital,
            Scheme::Hybrid,
            Scheme::Analog,
            Scheme::Outer,
        ],
    };
    let _ = args.seed.or(file.seed);
    let curves = binary::sweep(&template, &grid, &schemes)?;
    let csv = output::curves_to_csv(&curves);
    let out = args.out.or(file.out.map(PathBuf::from));
    write_out(out.as_ref(), &csv)
}

fn simulate(args: SimulateArgs) -> Result<(), RunError> {
    let file: config::SimulateFileConfig = config::load_file(args.config.as_deref())?;
    let n = args.n.or(file.n).unwrap_or(128);
    let setup = BinarySetup::new(
        args.beta.or(file.beta).unwrap_or(0.0),
        args.eps.or(file.eps).unwrap_or(0.1),
        args.zeta.or(file.zeta).unwrap_or(0.1),
    )?;
    let config = SimConfig {
        n,
        r1: args.r1.or(file.r1).unwrap_or(0.05),
        r2: args.r2.or(file.r2).unwrap_or(0.05),
        rf: args.rf.or(file.rf).unwrap_or(0.01),
        typicality_slack: args
            .typicality_slack
            .or(file.typicality_slack)
            .unwrap_or_else(|| SimConfig::default_slack(n)),
        trials: args.trials.or(file.trials).unwrap_or(500),
        seed: args.seed.or(file.seed).unwrap_or(1),
        setup,
        u: args.u.or(file.u).unwrap_or(0.3),
    };
    let started = Instant::now();
    let result = run_experiment(&config)?;
    let wall = started.elapsed();
    // wall time goes to stdout, never into the artifact, so the output file
    // stays byte-deterministic for a fixed config
    eprintln!("simulate: {} trials in {wall:?}", config.trials);
    let json = serde_json::to_string_pretty(&result)
        .map_err(|e| RunError::Internal(e.to_string()))?
        + "\n";
    let out = args.out.or(file.out.map(PathBuf::from));
    write_out(out.as_ref(), &json)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Classification {
    Binary {
        kind: &'static str,
        beta: f64,
        eps: f64,
        class: binary::SideInfoClass,
    },
    Gaussian {
        kind: &'static str,
        separation: gaussian::SeparationStatus,
    },
}

fn classify(args: ClassifyArgs) -> Result<(), RunError> {
    let file: config::ClassifyFileConfig = config::load_file(args.config.as_deref())?;
    let p_y = args.p_y.or(file.p_y);
    let p_z = args.p_z.or(file.p_z);
    let p_e = args.p_e.or(file.p_e);
    let p_b = args.p_b.or(file.p_b);
    let gaussian_mode = p_y.is_some() || p_z.is_some() || p_e.is_some() || p_b.is_some();

    let classification = if gaussian_mode {
        let p_b = match p_b {
            Some(v) => Some(config::require_positive("P_B", v)?),
            None => None,
        };
        let setup = GaussianSetup::new(
            1.0,
            config::require_positive("P_Y", p_y.unwrap_or(0.5))?,
            config::require_positive("P_Z", p_z.unwrap_or(1.0))?,
            config::require_positive("P_E", p_e.unwrap_or(1.0))?,
            p_b,
        )?;
        Classification::Gaussian {
            kind: "gaussian",
            separation: gaussian::separation_status(&setup),
        }
    } else {
        let beta = args
            .beta
            .or(file.beta)
            .ok_or_else(|| ConfigError("beta: required for binary classification".into()))?;
        let eps = args
            .eps
            .or(file.eps)
            .ok_or_else(|| ConfigError("eps: required for binary classification".into()))?;
        Classification::Binary {
            kind: "binary",
            beta,
            eps,
            class: binary::classify_side_info(beta, eps)?,
        }
    };
    let json = serde_json::to_string_pretty(&classification)
        .map_err(|e| RunError::Internal(e.to_string()))?
        + "\n";
    let out = args.out.or(file.out.map(PathBuf::from));
    write_out(out.as_ref(), &json)
}
