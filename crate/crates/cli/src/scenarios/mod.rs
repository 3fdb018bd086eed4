mod estimates;
mod mapping;
mod precession;
mod sweeps;

use rayon::prelude::*;

pub use estimates::run_estimates;
pub use mapping::run_mapping_check;
pub use precession::{run_precession, Layer};
pub use sweeps::{run_mass_sweep, run_mdm_sweep, run_spectrum_sweep};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::table::ResultTable;

pub fn run_scenario(scenario: Scenario, cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let mut table = match scenario {
        Scenario::SpectrumSweep => run_spectrum_sweep(cfg),
        Scenario::MassSweep => run_mass_sweep(cfg),
        Scenario::MdmSweep => run_mdm_sweep(cfg),
        Scenario::PrecessionAnalytic => run_precession(cfg, Layer::Analytic),
        Scenario::PrecessionNumeric => run_precession(cfg, Layer::Numeric),
        Scenario::PrecessionIon => run_precession(cfg, Layer::Ion),
        Scenario::MappingCheck => run_mapping_check(cfg),
        Scenario::Estimates => run_estimates(cfg),
    }?;
    table.config.scenario = Some(scenario);
    table.flag_non_finite();
    Ok(table)
}

/// Maps `f` over `items` on `workers` threads (0 = all cores), keeping
/// the input order.
pub(crate) fn par_map<T, R, F>(workers: usize, items: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, CliError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}
