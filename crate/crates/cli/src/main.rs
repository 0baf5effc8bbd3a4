//! Command line front end: single-point evaluation, parameter sweeps,
//! figure datasets, and the validation suite.

mod config;
mod figures;
mod model;
mod sweep;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{PrepSpec, SweepConfig, ValueSpec};
use model::{GaussianOptions, PointSpec, StateSpec};
use sweep::format_float;

#[derive(Parser)]
#[command(
    name = "entransfer",
    about = "Entanglement transfer from a three-mode field to three atom-cavity qubits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point and print the full report.
    Point(PointArgs),
    /// Run a parameter sweep to CSV (flags and/or --config file; flags win).
    Sweep(SweepArgs),
    /// Emit one of the preset figure datasets (ids 2 through 12).
    Figures(FiguresArgs),
    /// Run the full cross-check suite and print a pass/fail report.
    Validate {
        /// Worker pool size.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

#[derive(Args)]
struct StateFlags {
    /// State family: vacuum | ghz | w | gsd | gsd-sym1 | gsd-sym2 | mixed | tstate.
    #[arg(long)]
    state: Option<String>,
    /// Weight of |000> in the two-term superposition (family `ghz`).
    #[arg(long = "alpha-sq")]
    alpha_sq: Option<String>,
    /// Five comma-separated real coefficients (families `gsd*`).
    #[arg(long, value_delimiter = ',')]
    coeffs: Option<Vec<f64>>,
    /// Mixing probability (family `mixed`).
    #[arg(long)]
    p: Option<String>,
    /// Squared first coupling (family `tstate`).
    #[arg(long = "gamma1sq")]
    gamma1_sq: Option<String>,
    /// Squared coupling difference (family `tstate`).
    #[arg(long = "omegasq")]
    omega_sq: Option<String>,
    /// Truncation tail tolerance for Gaussian states.
    #[arg(long = "tail-tolerance")]
    tail_tolerance: Option<f64>,
    /// Renormalize truncated Gaussian states instead of carrying the
    /// trace residual.
    #[arg(long)]
    renormalize: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    state: StateFlags,
    /// Mirror transmittance.
    #[arg(long = "T", default_value_t = 1.0)]
    transmittance: f64,
    /// Dimensionless interaction time.
    #[arg(long)]
    gtau: f64,
    /// Atomic preparation pattern, three of 'g'/'e'.
    #[arg(long, default_value = "ggg")]
    prep: String,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateFlags,
    /// Mirror transmittance: value, start:stop:step, or comma list.
    #[arg(long = "T")]
    transmittance: Option<String>,
    /// Interaction time: value, start:stop:step, or comma list.
    #[arg(long)]
    gtau: Option<String>,
    /// One or more preparation patterns, comma separated.
    #[arg(long)]
    prep: Option<String>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker pool size.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Figure id (2 through 12).
    id: u8,
    /// Output CSV path (default fig<id>.csv).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker pool size.
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Resolves the point-command state flags into one concrete state.
fn resolve_point_state(flags: &StateFlags) -> Result<StateSpec> {
    let family = flags
        .state
        .as_deref()
        .context("missing required flag --state")?;
    let scalar = |key: &str, text: &Option<String>| -> Result<Option<f64>> {
        match text {
            None => Ok(None),
            Some(t) => {
                let values = config::parse_value_text(key, t)?;
                if values.len() != 1 {
                    bail!(
                        "{key}: the point command takes a single value, got {}",
                        values.len()
                    );
                }
                Ok(Some(values[0]))
            }
        }
    };
    let spec = match family {
        "vacuum" => StateSpec::Vacuum,
        "w" => StateSpec::W,
        "ghz" => StateSpec::Ghz {
            alpha_sq: scalar("alpha-sq", &flags.alpha_sq)?.unwrap_or(0.5),
        },
        "gsd" | "gsd-sym1" | "gsd-sym2" => {
            let form = match family {
                "gsd" => entransfer::states::GsdForm::Standard,
                "gsd-sym1" => entransfer::states::GsdForm::SymSingle,
                _ => entransfer::states::GsdForm::SymDouble,
            };
            let coeffs = match &flags.coeffs {
                Some(v) => {
                    if v.len() != 5 {
                        bail!("--coeffs: expected 5 values, got {}", v.len());
                    }
                    [v[0], v[1], v[2], v[3], v[4]]
                }
                None => [1.0; 5],
            };
            StateSpec::Gsd { form, coeffs }
        }
        "mixed" => StateSpec::Mixed {
            p: scalar("p", &flags.p)?
                .context("missing required flag --p for state family 'mixed'")?,
        },
        "tstate" => StateSpec::TState {
            gamma1_sq: scalar("gamma1sq", &flags.gamma1_sq)?
                .context("missing required flag --gamma1sq for state family 'tstate'")?,
            omega_sq: scalar("omegasq", &flags.omega_sq)?
                .context("missing required flag --omegasq for state family 'tstate'")?,
        },
        other => bail!(
            "--state: unknown family '{other}' (expected vacuum, ghz, w, gsd, gsd-sym1, \
             gsd-sym2, mixed, tstate)"
        ),
    };
    Ok(spec)
}

fn run_point(args: &PointArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&args.transmittance) {
        bail!("--T: value {} outside [0, 1]", args.transmittance);
    }
    let state = resolve_point_state(&args.state)?;
    let point = PointSpec {
        state,
        transmittance: args.transmittance,
        g_tau: args.gtau,
        prep_pattern: args.prep.clone(),
        gaussian: GaussianOptions {
            tail_tolerance: args.state.tail_tolerance.unwrap_or(1e-8),
            renormalize: args.state.renormalize,
        },
    };
    let report = point.evaluate()?;
    println!("state                  = {}", point.state.family());
    println!(
        "T                      = {}",
        format_float(point.transmittance)
    );
    println!("gtau                   = {}", format_float(point.g_tau));
    println!("prep                   = {}", point.prep_pattern);
    println!("purity                 = {}", format_float(report.purity));
    println!("neg_a_bc               = {}", format_float(report.neg_a_bc));
    println!("neg_b_ac               = {}", format_float(report.neg_b_ac));
    println!("neg_c_ab               = {}", format_float(report.neg_c_ab));
    println!(
        "tripartite_negativity  = {}",
        format_float(report.tripartite_negativity)
    );
    println!("neg_ab                 = {}", format_float(report.neg_ab));
    println!("neg_ac                 = {}", format_float(report.neg_ac));
    println!("neg_bc                 = {}", format_float(report.neg_bc));
    println!(
        "trace_residual         = {}",
        format_float(report.trace_residual)
    );
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let base = match &args.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::default(),
    };
    let coeffs = match args.state.coeffs {
        Some(v) if v.len() == 5 => Some([v[0], v[1], v[2], v[3], v[4]]),
        Some(v) => bail!("--coeffs: expected 5 values, got {}", v.len()),
        None => None,
    };
    let flags = SweepConfig {
        state: args.state.state,
        alpha_sq: args.state.alpha_sq.map(ValueSpec::Text),
        coeffs,
        p: args.state.p.map(ValueSpec::Text),
        gamma1_sq: args.state.gamma1_sq.map(ValueSpec::Text),
        omega_sq: args.state.omega_sq.map(ValueSpec::Text),
        transmittance: args.transmittance.map(ValueSpec::Text),
        gtau: args.gtau.map(ValueSpec::Text),
        prep: args.prep.map(PrepSpec::One),
        tail_tolerance: args.state.tail_tolerance,
        renormalize: if args.state.renormalize {
            Some(true)
        } else {
            None
        },
        out: args.out,
        jobs: args.jobs,
    };
    let merged = flags.overlay(base);
    let out = merged
        .out
        .clone()
        .context("missing required flag --out (or `out` in the config file)")?;
    let jobs = merged.jobs.unwrap_or_else(default_jobs);
    let plan = merged.plan()?;
    sweep::run_to_file(&plan, jobs, &out)?;
    eprintln!("wrote {} rows to {}", plan.grid_size(), out.display());
    Ok(())
}

fn run_figures(args: &FiguresArgs) -> Result<()> {
    let preset = figures::preset(args.id)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("fig{}.csv", args.id)));
    sweep::run_to_file(&preset.plan, args.jobs, &out)?;
    eprintln!(
        "figure {}: {} ({} rows) -> {}",
        preset.id,
        preset.description,
        preset.plan.grid_size(),
        out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Point(args) => run_point(&args).map(|()| true),
        Command::Sweep(args) => run_sweep(args).map(|()| true),
        Command::Figures(args) => run_figures(&args).map(|()| true),
        Command::Validate { jobs } => validate::run(jobs),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
