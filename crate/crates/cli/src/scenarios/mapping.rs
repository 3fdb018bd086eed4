use dirac_edm::ion::{
    map_params, map_params_inv, operator_identity_1d, verify_mapping_3d, FockConfig,
    MAPPING_TOLERANCE,
};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::table::{ResultTable, Row};

pub const ROUND_TRIP_TOLERANCE: f64 = 1e-12;

pub fn run_mapping_check(cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let ion = cfg.ion.params();
    let report = verify_mapping_3d(&ion, cfg.mapping.field, cfg.mapping.momentum)?;
    let mut table = ResultTable::new(
        Scenario::MappingCheck,
        &["check", "axis", "max_deviation", "tolerance"],
        cfg,
    );
    let mut failures = Vec::new();
    let mut push =
        |table: &mut ResultTable, check: String, axis: &str, deviation: f64, tolerance: f64| {
            let row = Row::new(vec![
                check.clone().into(),
                axis.into(),
                deviation.into(),
                tolerance.into(),
            ]);
            if deviation <= tolerance {
                table.push(row);
            } else {
                failures.push(format!("{check} {axis}").trim().to_string());
                table.push(row.flagged("fail"));
            }
        };

    for entry in &report.entries {
        let axis = entry
            .axis
            .map(|a| format!("{a:?}").to_lowercase())
            .unwrap_or_default();
        push(
            &mut table,
            entry.family.to_string(),
            &axis,
            entry.max_deviation,
            report.tolerance,
        );
    }

    let fock = FockConfig::new(cfg.fock.n_max, ion.delta_spread)?;
    push(
        &mut table,
        "operator-identity-1d".into(),
        "x",
        operator_identity_1d(&ion, &fock)?,
        MAPPING_TOLERANCE,
    );

    let back = map_params_inv(&map_params(&ion)?, &ion)?;
    let residual = [
        (back.omega_tilde, ion.omega_tilde),
        (back.detuning, ion.detuning),
        (back.omega1, ion.omega1),
        (back.omega2, ion.omega2),
    ]
    .iter()
    .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
    .fold(0.0, f64::max);
    push(
        &mut table,
        "map-params-round-trip".into(),
        "",
        residual,
        ROUND_TRIP_TOLERANCE,
    );

    table.summarize("max_deviation", report.max_deviation());
    if !failures.is_empty() {
        table.warn(format!(
            "mapping identities failed: {}",
            failures.join(", ")
        ));
    }
    Ok(table)
}
