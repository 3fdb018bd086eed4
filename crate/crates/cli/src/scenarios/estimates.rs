use std::f64::consts::PI;

use dirac_edm::dirac_core::lambda_ratio;
use dirac_edm::ion::ion_precession_frequency;
use dirac_edm::units::{
    joule_to_ev, neutron_estimate, C_LIGHT, HBAR_EV_S, NEUTRON_MAGNETIC_MOMENT_J_PER_T,
    NEUTRON_REST_ENERGY_EV,
};
use dirac_edm::DiracParams;

use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::table::{Cell, ResultTable, Row};

/// Emulated precession frequencies reachable with trapped ions, rad/s.
pub const ION_RANGE: (f64, f64) = (10.0, 1e7);

const SECONDS_PER_YEAR: f64 = 365.25 * 86400.0;

const COLUMNS: [&str; 9] = [
    "case",
    "field_v_per_m",
    "edm_e_cm",
    "splitting_ev",
    "omega_rad_per_s",
    "frequency_hz",
    "period_s",
    "period_years",
    "inverse_omega_years",
];

fn row(case: &str, field: Cell, edm: Cell, splitting_ev: f64, omega: f64) -> Row {
    let period = 2.0 * PI / omega;
    Row::new(vec![
        case.into(),
        field,
        edm,
        splitting_ev.into(),
        omega.into(),
        (omega / (2.0 * PI)).into(),
        period.into(),
        (period / SECONDS_PER_YEAR).into(),
        (1.0 / omega / SECONDS_PER_YEAR).into(),
    ])
}

pub fn run_estimates(cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let est = &cfg.estimates;
    let mut table = ResultTable::new(Scenario::Estimates, &COLUMNS, cfg);
    for (case, edm) in [
        ("neutron-upper-limit", est.edm_upper_e_cm),
        ("neutron-standard-model", est.edm_sm_e_cm),
    ] {
        let n = neutron_estimate(est.field_v_per_m, edm)?;
        table.push(row(
            case,
            est.field_v_per_m.into(),
            edm.into(),
            n.splitting_ev,
            n.omega_rad_per_s,
        ));
    }

    let ion = est.ion.params();
    let omega = ion_precession_frequency(&ion, est.ion.momentum)?;
    table.push(row(
        "ion-emulation",
        "".into(),
        "".into(),
        omega * HBAR_EV_S,
        omega,
    ));

    let mdm_coupling_ev =
        joule_to_ev(NEUTRON_MAGNETIC_MOMENT_J_PER_T.abs() * est.field_v_per_m / C_LIGHT);
    let lambda = lambda_ratio(&DiracParams::one_d(
        NEUTRON_REST_ENERGY_EV,
        1.0,
        0.0,
        mdm_coupling_ev,
        1.0,
        0.0,
    ))?;
    table.summarize("neutron_lambda", lambda);
    let in_range = (ION_RANGE.0..=ION_RANGE.1).contains(&omega.abs());
    table.summarize("ion_omega_in_range", if in_range { "yes" } else { "no" });
    if !in_range {
        table.warn(format!(
            "emulated ω = {omega:e} rad/s lies outside {:e}..{:e}",
            ION_RANGE.0, ION_RANGE.1
        ));
    }
    Ok(table)
}
