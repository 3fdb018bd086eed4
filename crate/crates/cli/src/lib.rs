//! Scenario runner for the dipole-moment Dirac model: parameter sweeps,
//! cross-layer precession experiments, mapping checks and the
//! physical-unit estimates, written as CSV or JSON tables.

pub mod config;
pub mod error;
pub mod scenarios;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use config::{Format, Scenario, ScenarioConfig};
pub use error::CliError;
pub use scenarios::run_scenario;
pub use table::ResultTable;

/// Exit status when a scenario ran but hit a numerical failure.
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dirac-edm", version, about)]
pub struct Cli {
    /// Scenario to run; falls back to `scenario` in the config.
    pub scenario: Option<Scenario>,

    /// TOML config, or a previous CSV/JSON result to rerun.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Override a config value, e.g. `--set dirac.edm=0.2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    #[arg(long)]
    pub format: Option<Format>,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads for row computation (0 = all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

impl Cli {
    /// Resolves the configuration: flags over `--set` over file over defaults.
    pub fn resolve(&self) -> Result<(Scenario, ScenarioConfig), CliError> {
        let mut cfg = config::resolve(self.config.as_deref(), &self.overrides)?;
        if let Some(s) = self.scenario {
            cfg.scenario = Some(s);
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        if let Some(out) = &self.out {
            cfg.output.path = Some(out.clone());
        }
        if let Some(w) = self.workers {
            cfg.run.workers = w;
        }
        let scenario = cfg.scenario.ok_or_else(|| {
            CliError::Config("no scenario given on the command line or in the config".into())
        })?;
        Ok((scenario, cfg))
    }
}

/// Runs the command line and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match try_execute(cli) {
        Ok(table) => {
            for w in &table.warnings {
                eprintln!("warning: {w}");
            }
            if table.warnings.is_empty() {
                0
            } else {
                EXIT_NUMERICAL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_execute(cli: &Cli) -> Result<ResultTable, CliError> {
    let (scenario, cfg) = cli.resolve()?;
    let table = run_scenario(scenario, &cfg)?;
    let text = table.render(cfg.output.format)?;
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e))?,
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // A closed pipe (e.g. `| head`) is the reader's choice, not a failure.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                return Err(CliError::Io(PathBuf::from("<stdout>"), e));
            }
            _ => {}
        },
    }
    Ok(table)
}
