use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use biwave_core::prelude::{report_csv, run_convergence, CurveKind, Formulation, Preset, RunConfig};
use biwave_core::study::write_outputs;
use clap::{Args, Parser, Subcommand};

/// Biharmonic wave scattering by a clamped cavity: convergence studies.
#[derive(Parser)]
#[command(name = "biwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence sweep and write report.csv, report.json and far-field samples.
    Solve(SolveArgs),
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
struct SolveArgs {
    /// JSON run configuration.
    #[arg(long, required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in study used as the base configuration.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// apple, peanut, peach, drop or heart.
    #[arg(long)]
    curve: Option<String>,
    /// a1, a2 or ss.
    #[arg(long)]
    formulation: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    /// Comma separated values of n.
    #[arg(long, value_delimiter = ',')]
    sweep: Option<Vec<usize>>,
    /// Grading exponent; switches on shifted nodes.
    #[arg(long)]
    grading: Option<f64>,
    /// Far-field reference resolution for plane-wave runs.
    #[arg(long)]
    reference_n: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors in the inputs exit with 2, failed solves with 3.
enum Failure {
    Config(anyhow::Error),
    Solver(anyhow::Error),
}

impl From<biwave_core::Error> for Failure {
    fn from(e: biwave_core::Error) -> Self {
        if e.is_solver_failure() {
            Failure::Solver(e.into())
        } else {
            Failure::Config(e.into())
        }
    }
}

fn configure(args: &SolveArgs) -> anyhow::Result<RunConfig> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => RunConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
        (None, Some(name)) => Preset::parse(name)
            .ok_or_else(|| anyhow!("unknown preset {name:?}; see `biwave presets`"))?
            .config(),
        (None, None) => unreachable!("clap requires --config or --preset"),
    };
    if let Some(name) = &args.curve {
        config.curve = CurveKind::from_name(name).ok_or_else(|| anyhow!("unknown curve {name:?}"))?;
    }
    if let Some(name) = &args.formulation {
        config.formulation = Formulation::parse(name).ok_or_else(|| anyhow!("unknown formulation {name:?}"))?;
    }
    if let Some(kappa) = args.kappa {
        config.kappa = kappa;
    }
    if let Some(sweep) = &args.sweep {
        config.sweep = sweep.clone();
    }
    if let Some(p) = args.grading {
        config.grading = Some(p);
        config.shifted = true;
    }
    if args.reference_n.is_some() {
        config.reference_n = args.reference_n;
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn run(args: &SolveArgs) -> Result<(), Failure> {
    let config = configure(args).map_err(Failure::Config)?;
    let report = run_convergence(&config)?;
    print!("{}", report_csv(&report));
    if let Some(dir) = &config.out {
        for path in write_outputs(&report, dir)? {
            log::info!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Presets => {
            for p in Preset::ALL {
                let c = p.config();
                println!("{:<14} {:<7} {:<3} {:?}", p.name(), c.curve.name(), c.formulation.name(), c.incident);
            }
            ExitCode::SUCCESS
        }
        Command::Solve(args) => match run(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(Failure::Config(e)) => {
                eprintln!("configuration error: {e:#}");
                ExitCode::from(2)
            }
            Err(Failure::Solver(e)) => {
                eprintln!("solver failure: {e:#}");
                ExitCode::from(3)
            }
        },
    }
}
