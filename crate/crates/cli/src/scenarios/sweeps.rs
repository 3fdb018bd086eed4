use dirac_edm::dirac_core::{edm_spectrum, lambda_ratio, splitting_exact, splitting_taylor};
use dirac_edm::dirac_numeric::{build_h1d, diagonalize};
use dirac_edm::DiracParams;

use super::par_map;
use crate::config::{Scenario, ScenarioConfig, SweepQuantity};
use crate::error::CliError;
use crate::table::{Cell, ResultTable, Row};

/// Largest analytic/numeric eigenvalue disagreement accepted without a warning.
pub const SPECTRUM_AGREEMENT: f64 = 1e-10;

fn taylor_cell(params: &DiracParams, threshold: f64, row_flags: &mut Vec<String>) -> Cell {
    match splitting_taylor(params, threshold) {
        Ok(v) => v.into(),
        Err(_) => {
            row_flags.push("taylor-out-of-range".into());
            f64::NAN.into()
        }
    }
}

fn lambda_cell(params: &DiracParams, row_flags: &mut Vec<String>) -> Cell {
    match lambda_ratio(params) {
        Ok(v) => v.into(),
        Err(_) => {
            row_flags.push("lambda-undefined".into());
            f64::NAN.into()
        }
    }
}

fn finish(cells: Vec<Cell>, flags: Vec<String>) -> Row {
    let row = Row::new(cells);
    if flags.is_empty() {
        row
    } else {
        row.flagged(flags.join(";"))
    }
}

pub fn run_spectrum_sweep(cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let grid = cfg.sweep.grid()?;
    let base = cfg.dirac.params();
    base.validate_1d()?;
    let swept = match cfg.sweep.quantity {
        SweepQuantity::EField => "e_field",
        SweepQuantity::Edm => "edm",
    };
    let columns = [
        swept,
        "analytic_e1",
        "analytic_e2",
        "analytic_e3",
        "analytic_e4",
        "numeric_e1",
        "numeric_e2",
        "numeric_e3",
        "numeric_e4",
        "splitting_exact",
        "splitting_taylor",
        "lambda",
        "max_rel_deviation",
    ];
    let threshold = cfg.run.taylor_threshold;
    let rows = par_map(cfg.run.workers, &grid, |&v| {
        let mut params = base;
        match cfg.sweep.quantity {
            SweepQuantity::EField => params.e_field[0] = v,
            SweepQuantity::Edm => params.edm = v,
        }
        let analytic = edm_spectrum(&params)?.sorted();
        let numeric = diagonalize(&build_h1d(&params)?)?.values;
        let scale = analytic.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let deviation = analytic
            .iter()
            .zip(&numeric)
            .map(|(a, n)| (a - n).abs() / a.abs().max(f64::EPSILON * scale).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        let mut flags = Vec::new();
        let mut cells: Vec<Cell> = vec![v.into()];
        cells.extend(analytic.iter().map(|&e| Cell::from(e)));
        cells.extend(numeric.iter().map(|&e| Cell::from(e)));
        cells.push(splitting_exact(&params)?.into());
        cells.push(taylor_cell(&params, threshold, &mut flags));
        cells.push(lambda_cell(&params, &mut flags));
        cells.push(deviation.into());
        Ok((finish(cells, flags), deviation))
    })?;

    let mut table = ResultTable::new(Scenario::SpectrumSweep, &columns, cfg);
    let worst = rows.iter().map(|(_, d)| *d).fold(0.0, f64::max);
    for (row, _) in rows {
        table.push(row);
    }
    table.summarize("max_rel_deviation", worst);
    if worst.is_nan() || worst >= SPECTRUM_AGREEMENT {
        table.warn(format!(
            "analytic and numeric spectra differ by {worst:e} (relative)"
        ));
    }
    Ok(table)
}

pub fn run_mass_sweep(cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let grid = cfg.sweep.grid()?;
    if grid.iter().any(|&m| m < 0.0) {
        return Err(CliError::Config(
            "mass-sweep grid must be non-negative".into(),
        ));
    }
    let base = cfg.dirac.params();
    base.validate_1d()?;
    let leading = 2.0 * base.edm_coupling();
    let columns = [
        "mass_energy",
        "e_plus_up",
        "e_plus_down",
        "splitting_exact",
        "leading_order",
        "ratio_to_leading",
    ];
    let rows = par_map(cfg.run.workers, &grid, |&m| {
        let params = DiracParams {
            mass_energy: m,
            ..base
        };
        let s = edm_spectrum(&params)?;
        let ratio = if leading != 0.0 {
            s.splitting / leading
        } else {
            f64::NAN
        };
        let row = Row::new(vec![
            m.into(),
            s.e_plus_up.into(),
            s.e_plus_down.into(),
            s.splitting.into(),
            leading.into(),
            ratio.into(),
        ]);
        Ok(if ratio.is_finite() {
            row
        } else {
            row.flagged("no-edm-coupling")
        })
    })?;
    let mut table = ResultTable::new(Scenario::MassSweep, &columns, cfg);
    for (m, row) in grid.iter().zip(rows) {
        if *m == 0.0 {
            table.summarize("splitting_at_zero_mass", row.cells[3].clone());
        }
        table.push(row);
    }
    Ok(table)
}

pub fn run_mdm_sweep(cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let grid = cfg.sweep.grid()?;
    let base = cfg.dirac.params();
    base.validate_1d()?;
    let reference = splitting_exact(&DiracParams { mdm: 0.0, ..base })?;
    let threshold = cfg.run.taylor_threshold;
    let columns = [
        "mdm",
        "lambda",
        "splitting_exact",
        "splitting_taylor",
        "decrease_exact",
        "decrease_taylor",
    ];
    let rows = par_map(cfg.run.workers, &grid, |&mu| {
        let params = DiracParams { mdm: mu, ..base };
        let mut flags = Vec::new();
        let exact = splitting_exact(&params)?;
        let lambda = lambda_cell(&params, &mut flags);
        let taylor = taylor_cell(&params, threshold, &mut flags);
        let decrease_taylor = match lambda.as_f64() {
            Some(l) if l.is_finite() => l * params.edm_coupling(),
            _ => f64::NAN,
        };
        Ok(finish(
            vec![
                mu.into(),
                lambda,
                exact.into(),
                taylor,
                (reference - exact).into(),
                decrease_taylor.into(),
            ],
            flags,
        ))
    })?;
    let mut table = ResultTable::new(Scenario::MdmSweep, &columns, cfg);
    for row in rows {
        table.push(row);
    }
    table.summarize("splitting_without_mdm", reference);
    Ok(table)
}
