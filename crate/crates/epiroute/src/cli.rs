//! Command-line front end. Exit codes: 0 success, 1 configuration error,
//! 2 runtime failure (including a failing validation suite).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::{self, Backend, ConfigFile};
use crate::error::{Error, Result};

#[derive(Parser)]
#[command(
    name = "epiroute",
    about = "Buffer/reliability tradeoff tables for epidemic routing: closed forms, \
             fluid ODE integration, and Monte-Carlo meeting-process / mobility simulators"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (TOML; see the config docs or configs/ for examples).
    #[arg(long)]
    config: PathBuf,
    /// Override the scenario's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario's run count.
    #[arg(long)]
    runs: Option<usize>,
    /// Override the scenario's backend (analytic | ode | meeting | spatial).
    #[arg(long)]
    backend: Option<String>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form / ODE report: timers, buffer curves, state trajectories.
    Analytic(CommonArgs),
    /// One Monte-Carlo batch, one summary row.
    Simulate(CommonArgs),
    /// One row per axis value from the [sweep] section.
    Sweep(CommonArgs),
    /// Buffer improvement of fully vs null antipacket dissemination per t_d.
    Xi {
        #[command(flatten)]
        common: CommonArgs,
        /// Delivery times to evaluate (defaults to the [xi] section).
        #[arg(long, value_delimiter = ',')]
        t_d: Vec<f64>,
    },
    /// Run the validation suite and print one line per criterion.
    Validate {
        /// Run a single criterion (1-10) instead of the whole suite.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn parse_backend(name: &str) -> Result<Backend> {
    match name {
        "analytic" => Ok(Backend::Analytic),
        "ode" => Ok(Backend::Ode),
        "meeting" => Ok(Backend::Meeting),
        "spatial" => Ok(Backend::Spatial),
        other => Err(Error::Config(format!(
            "unknown backend '{other}' (expected analytic, ode, meeting or spatial)"
        ))),
    }
}

fn load(common: &CommonArgs) -> Result<(ConfigFile, config::ResolvedScenario)> {
    let mut file = ConfigFile::load(&common.config)?;
    if let Some(seed) = common.seed {
        file.scenario.master_seed = seed;
    }
    if let Some(runs) = common.runs {
        file.scenario.runs = runs;
    }
    if let Some(backend) = &common.backend {
        file.scenario.backend = parse_backend(backend)?;
    }
    let resolved = config::resolve(&file)?;
    Ok((file, resolved))
}

fn with_output<F>(out: &Option<PathBuf>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            f(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

/// Run the CLI; the caller turns the error into an exit code.
pub fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analytic(common) => {
            let (_, scn) = load(&common)?;
            with_output(&common.out, |w| commands::cmd_analytic(&scn, w))
        }
        Command::Simulate(common) => {
            let (_, scn) = load(&common)?;
            with_output(&common.out, |w| commands::cmd_simulate(&scn, w).map(|_| ()))
        }
        Command::Sweep(common) => {
            let (file, scn) = load(&common)?;
            let sweep = file
                .sweep
                .ok_or_else(|| Error::Config("sweep needs a [sweep] section".into()))?;
            with_output(&common.out, |w| commands::cmd_sweep(&scn, &sweep, w))
        }
        Command::Xi { common, t_d } => {
            let (file, scn) = load(&common)?;
            let values = if t_d.is_empty() {
                file.xi
                    .map(|x| x.t_d_values)
                    .ok_or_else(|| {
                        Error::Config("xi needs --t-d values or an [xi] section".into())
                    })?
            } else {
                t_d
            };
            with_output(&common.out, |w| commands::cmd_xi(&scn, &values, w))
        }
        Command::Validate { criterion } => {
            let outcomes = match criterion {
                Some(id) => match crate::acceptance::run_one(id)? {
                    Some(o) => vec![o],
                    None => {
                        return Err(Error::Config(format!(
                            "no criterion {id}; valid ids are 1-10"
                        )));
                    }
                },
                None => crate::acceptance::run_all()?,
            };
            let mut all_pass = true;
            for o in &outcomes {
                println!("{}", o.line());
                all_pass &= o.passed;
            }
            if all_pass {
                Ok(())
            } else {
                Err(Error::Run {
                    run: 0,
                    message: "one or more validation criteria failed (see lines above)".into(),
                })
            }
        }
    }
}
