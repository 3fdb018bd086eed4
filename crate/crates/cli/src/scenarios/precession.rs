use dirac_edm::dirac_core::{
    eigenspinors, precession_frequency, spin_expectation, AnalyticPrecession,
    PositiveEnergySuperposition,
};
use dirac_edm::dirac_numeric::{build_h1d, diagonalize, Propagator4};
use dirac_edm::ion::{
    assemble_h1d_ion, extract_frequency, ion_precession_frequency, map_params, prepare_wavepacket,
    FockConfig, FrequencyEstimate, IonPropagator,
};
use dirac_edm::{Channel, DiracParams, SpinTimeSeries, Spinor4};
use num_complex::Complex64;

use super::par_map;
use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::table::{ResultTable, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Analytic,
    Numeric,
    Ion,
}

const COLUMNS: [&str; 9] = ["t", "sx", "sy", "sz", "pa", "pb", "pc", "pd", "norm"];

struct Sample {
    spin: [f64; 3],
    populations: [f64; 4],
    norm: f64,
}

fn weights(cfg: &ScenarioConfig) -> Result<(Complex64, Complex64), CliError> {
    let w = cfg.precession.weight_up;
    if !(0.0..=1.0).contains(&w) {
        return Err(CliError::Config(format!(
            "precession.weight_up must lie in [0, 1], got {w}"
        )));
    }
    Ok((
        Complex64::new(w.sqrt(), 0.0),
        Complex64::from_polar((1.0 - w).sqrt(), cfg.precession.relative_phase),
    ))
}

/// `b_up·|+↑⟩ + b_down·|+↓⟩` at the momentum of `params`. Closed-form
/// spinors are used when they exist (μ_a = 0, p_x ≠ 0); otherwise the
/// positive-energy eigenvectors of the numeric Hamiltonian, with "up" the
/// higher of the two energies.
fn positive_energy_spinor(params: &DiracParams, cfg: &ScenarioConfig) -> Result<Spinor4, CliError> {
    let (b_up, b_down) = weights(cfg)?;
    if params.mdm == 0.0 && params.momentum[0] != 0.0 {
        let e = eigenspinors(params)?;
        return Ok(e.plus_up.spinor.scale(b_up) + e.plus_down.spinor.scale(b_down));
    }
    let eig = diagonalize(&build_h1d(params)?)?;
    Ok(eig.vectors[3].scale(b_up) + eig.vectors[2].scale(b_down))
}

fn to_series(times: &[f64], samples: &[Sample]) -> SpinTimeSeries {
    let mut series = SpinTimeSeries::with_capacity(times.len());
    for (t, s) in times.iter().zip(samples) {
        series.push(*t, s.spin, s.populations, s.norm);
    }
    series
}

fn extract(
    table: &mut ResultTable,
    series: &SpinTimeSeries,
    channel: Channel,
    expected: f64,
    suffix: &str,
) -> Option<FrequencyEstimate> {
    match extract_frequency(series, channel) {
        Ok(est) => {
            table.summarize(&format!("omega_extracted{suffix}"), est.omega);
            table.summarize(&format!("omega_uncertainty{suffix}"), est.uncertainty);
            table.summarize(
                &format!("relative_error{suffix}"),
                (est.omega - expected.abs()) / expected.abs(),
            );
            Some(est)
        }
        Err(e) => {
            table.warn(format!(
                "frequency extraction on channel {channel}{suffix} failed: {e}"
            ));
            None
        }
    }
}

fn push_rows(table: &mut ResultTable, times: &[f64], samples: &[Sample]) {
    for (t, s) in times.iter().zip(samples) {
        let mut cells = vec![(*t).into()];
        cells.extend(s.spin.iter().map(|&x| x.into()));
        cells.extend(s.populations.iter().map(|&x| x.into()));
        cells.push(s.norm.into());
        table.push(Row::new(cells));
    }
}

pub fn run_precession(cfg: &ScenarioConfig, layer: Layer) -> Result<ResultTable, CliError> {
    let channel = cfg.precession.channel()?;
    match layer {
        Layer::Analytic => run_analytic(cfg, channel),
        Layer::Numeric => run_numeric(cfg, channel),
        Layer::Ion => run_ion(cfg, channel),
    }
}

fn analytic_model(cfg: &ScenarioConfig) -> Result<AnalyticPrecession, CliError> {
    let (b_up, b_down) = weights(cfg)?;
    Ok(AnalyticPrecession::new(PositiveEnergySuperposition::new(
        b_up,
        b_down,
        cfg.dirac.params(),
    )?)?)
}

fn run_analytic(cfg: &ScenarioConfig, channel: Channel) -> Result<ResultTable, CliError> {
    let model = analytic_model(cfg)?;
    let expected = model.omega();
    let times = cfg.time.grid(expected)?;
    let samples = par_map(cfg.run.workers, &times, |&t| {
        let psi = model.spinor_at(t);
        Ok(Sample {
            spin: model.spin_at(t),
            populations: psi.populations(),
            norm: psi.norm(),
        })
    })?;
    let mut table = ResultTable::new(Scenario::PrecessionAnalytic, &COLUMNS, cfg);
    push_rows(&mut table, &times, &samples);
    table.summarize("omega_expected", expected);
    extract(
        &mut table,
        &to_series(&times, &samples),
        channel,
        expected,
        "",
    );
    Ok(table)
}

fn run_numeric(cfg: &ScenarioConfig, channel: Channel) -> Result<ResultTable, CliError> {
    let params = cfg.dirac.params();
    let expected = precession_frequency(&params)?;
    let times = cfg.time.grid(expected)?;
    // With closed-form spinors available, start from exactly the analytic
    // initial state so the two layers can be compared pointwise.
    let analytic = if params.mdm == 0.0 && params.momentum[0] != 0.0 {
        Some(analytic_model(cfg)?)
    } else {
        None
    };
    let psi0 = match &analytic {
        Some(model) => model.spinor_at(0.0),
        None => positive_energy_spinor(&params, cfg)?,
    };
    let propagator = Propagator4::new(&build_h1d(&params)?)?;
    let samples = par_map(cfg.run.workers, &times, |&t| {
        let psi = propagator.apply(&psi0, t);
        Ok(Sample {
            spin: spin_expectation(&psi)?,
            populations: psi.populations(),
            norm: psi.norm(),
        })
    })?;
    let mut table = ResultTable::new(Scenario::PrecessionNumeric, &COLUMNS, cfg);
    push_rows(&mut table, &times, &samples);
    table.summarize("omega_expected", expected);
    if let Some(model) = analytic {
        let deviation = times
            .iter()
            .zip(&samples)
            .flat_map(|(t, s)| {
                let a = model.spin_at(*t);
                (0..3).map(move |j| (a[j] - s.spin[j]).abs())
            })
            .fold(0.0, f64::max);
        table.summarize("max_deviation_vs_analytic", deviation);
    }
    extract(
        &mut table,
        &to_series(&times, &samples),
        channel,
        expected,
        "",
    );
    Ok(table)
}

fn simulate(
    cfg: &ScenarioConfig,
    n_max: usize,
    spinor: &Spinor4,
    times: &[f64],
) -> Result<Vec<Sample>, CliError> {
    let ion = cfg.ion.params();
    let fock = FockConfig::new(n_max, ion.delta_spread)?;
    let state = prepare_wavepacket(&fock, cfg.ion.momentum, spinor)?;
    let propagator = IonPropagator::new(&state, &assemble_h1d_ion(&ion, &fock)?)?;
    par_map(cfg.run.workers, times, |&t| {
        let psi = propagator.state_at(t);
        Ok(Sample {
            spin: psi.spin_expectation(),
            populations: psi.level_populations(),
            norm: psi.norm(),
        })
    })
}

fn run_ion(cfg: &ScenarioConfig, channel: Channel) -> Result<ResultTable, CliError> {
    let ion = cfg.ion.params();
    let p = cfg.ion.momentum;
    let dirac = map_params(&ion)?.with_momentum_x(p);
    let omega_formula = ion_precession_frequency(&ion, p)?;
    let omega_dirac = precession_frequency(&dirac)?;
    let times = cfg.time.grid(omega_formula)?;
    let spinor = positive_energy_spinor(&dirac, cfg)?;

    let samples = simulate(cfg, cfg.fock.n_max, &spinor, &times)?;
    let mut table = ResultTable::new(Scenario::PrecessionIon, &COLUMNS, cfg);
    push_rows(&mut table, &times, &samples);
    table.summarize("omega_formula", omega_formula);
    table.summarize("omega_dirac", omega_dirac);
    table.summarize("emulated_c", ion.emulated_c());
    table.summarize("emulated_mass_energy", dirac.mass_energy);
    let first = extract(
        &mut table,
        &to_series(&times, &samples),
        channel,
        omega_formula,
        "",
    );
    if let Some(est) = first {
        table.summarize(
            "relative_error_vs_dirac",
            (est.omega - omega_dirac.abs()) / omega_dirac.abs(),
        );
    }

    if cfg.precession.convergence_check {
        let doubled = 2 * cfg.fock.n_max;
        table.summarize("n_max_doubled", doubled as f64);
        let samples = simulate(cfg, doubled, &spinor, &times)?;
        let second = extract(
            &mut table,
            &to_series(&times, &samples),
            channel,
            omega_formula,
            "_doubled",
        );
        if let (Some(a), Some(b)) = (first, second) {
            let shift = (a.omega - b.omega).abs();
            table.summarize("n_max_shift", shift);
            if shift.is_nan() || shift >= a.uncertainty {
                table.warn(format!(
                    "doubling n_max moved ω by {shift:e}, more than the uncertainty {:e}",
                    a.uncertainty
                ));
            }
        }
    }
    Ok(table)
}
