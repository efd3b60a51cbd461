use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use paramosc::commands::{
    run_radon_command, run_tomogram_command, run_trajectory_command, run_verify_command,
    run_wigner_command, TomogramMode, WignerSource,
};
use paramosc::config::DEFAULT_SCENARIO;
use paramosc::{parse_config_with_overrides, ReferenceFrame, ScenarioConfig};

/// Parametric-oscillator coherent states: trajectories, tomograms and Wigner functions.
#[derive(Debug, Parser)]
#[command(name = "paramosc", version)]
struct Cli {
    /// Scenario document (TOML). Without one the built-in defaults are used.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a scenario key, e.g. `--set run.step=5e-4`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trajectory, variances and squeezing flags at every step.
    Trajectory,
    /// Analytic tomogram densities at one time.
    Tomogram(FrameArgs),
    /// Wigner function on the phase-space grid at one time.
    Wigner {
        #[arg(long, default_value_t = 0.0)]
        time: f64,
        #[arg(long, value_enum, default_value_t = Source::Analytic)]
        source: Source,
    },
    /// Tomogram obtained by Radon-transforming the numeric Wigner function.
    Radon(FrameArgs),
    /// Runs the acceptance suite; exits nonzero on any failure.
    Verify,
}

#[derive(Debug, Args)]
struct FrameArgs {
    #[arg(long, default_value_t = 0.0)]
    time: f64,
    #[arg(
        long,
        requires = "nu",
        conflicts_with = "theta",
        allow_hyphen_values = true
    )]
    mu: Option<f64>,
    #[arg(long, requires = "mu", allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Optical frame angle; `(mu, nu) = (cos theta, sin theta)`.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
}

impl FrameArgs {
    fn mode(&self) -> anyhow::Result<TomogramMode> {
        match (self.mu, self.nu, self.theta) {
            (Some(mu), Some(nu), None) => {
                Ok(TomogramMode::Symplectic(ReferenceFrame::new(mu, nu)?))
            }
            (None, None, Some(theta)) => Ok(TomogramMode::Optical(theta)),
            (None, None, None) => Ok(TomogramMode::Optical(0.0)),
            _ => bail!("give either --mu and --nu, or --theta"),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Analytic,
    Numeric,
}

fn load_config(cli: &Cli) -> anyhow::Result<ScenarioConfig> {
    let text = match &cli.config {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => DEFAULT_SCENARIO.to_string(),
    };
    Ok(parse_config_with_overrides(&text, &cli.overrides)?)
}

fn emit(cli: &Cli, cfg: &ScenarioConfig, document: &str) -> anyhow::Result<()> {
    match cli.out.as_ref().or(cfg.output.as_ref()) {
        Some(path) => {
            fs::write(path, document).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(document.as_bytes())
                .and_then(|_| stdout.flush())
            {
                // A closed reader (`| head`) is not a failure of the command.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = load_config(cli)?;
    let (document, passed) = match &cli.command {
        Command::Trajectory => (run_trajectory_command(&cfg)?, true),
        Command::Tomogram(args) => (run_tomogram_command(&cfg, args.mode()?, args.time)?, true),
        Command::Wigner { time, source } => {
            let source = match source {
                Source::Analytic => WignerSource::Analytic,
                Source::Numeric => WignerSource::Numeric,
            };
            (run_wigner_command(&cfg, *time, source)?, true)
        }
        Command::Radon(args) => (run_radon_command(&cfg, args.mode()?, args.time)?, true),
        Command::Verify => run_verify_command(&cfg),
    };
    emit(cli, &cfg, &document)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
