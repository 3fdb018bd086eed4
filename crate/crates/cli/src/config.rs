//! Scenario configuration: TOML file, `--set` overrides and defaults.
//!
//! Precedence is command line over file over defaults. A previous result
//! file (CSV or JSON) is also accepted as the config source; its embedded
//! resolved configuration is used.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use dirac_edm::ion::IonParams;
use dirac_edm::{Channel, DiracParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    SpectrumSweep,
    MassSweep,
    MdmSweep,
    PrecessionAnalytic,
    PrecessionNumeric,
    PrecessionIon,
    MappingCheck,
    Estimates,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scenario::SpectrumSweep => "spectrum-sweep",
            Scenario::MassSweep => "mass-sweep",
            Scenario::MdmSweep => "mdm-sweep",
            Scenario::PrecessionAnalytic => "precession-analytic",
            Scenario::PrecessionNumeric => "precession-numeric",
            Scenario::PrecessionIon => "precession-ion",
            Scenario::MappingCheck => "mapping-check",
            Scenario::Estimates => "estimates",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Quantity swept by `spectrum-sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepQuantity {
    #[default]
    EField,
    Edm,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub dirac: DiracSection,
    pub ion: IonSection,
    pub fock: FockSection,
    pub sweep: SweepSection,
    pub time: TimeSection,
    pub precession: PrecessionSection,
    pub mapping: MappingSection,
    pub estimates: EstimatesSection,
    pub output: OutputSection,
    pub run: RunSection,
}

/// One-dimensional Dirac parameters in natural units (x components only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiracSection {
    pub mass_energy: f64,
    pub c_sim: f64,
    pub edm: f64,
    pub mdm: f64,
    pub e_field: f64,
    pub momentum: f64,
}

impl Default for DiracSection {
    fn default() -> Self {
        DiracSection {
            mass_energy: 1.0,
            c_sim: 1.0,
            edm: 0.1,
            mdm: 0.0,
            e_field: 1.0,
            momentum: 1.0,
        }
    }
}

impl DiracSection {
    pub fn params(&self) -> DiracParams {
        DiracParams::one_d(
            self.mass_energy,
            self.c_sim,
            self.edm,
            self.mdm,
            self.e_field,
            self.momentum,
        )
    }
}

/// Ion controls in natural units (ħ = 1, rates in units of the time scale).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IonSection {
    pub eta: f64,
    pub delta_spread: f64,
    pub omega_tilde: f64,
    pub detuning: f64,
    pub omega1: f64,
    pub omega2: f64,
    /// Mean momentum of the prepared wavepacket.
    pub momentum: f64,
}

impl Default for IonSection {
    fn default() -> Self {
        IonSection {
            eta: 0.05,
            delta_spread: 1.0,
            omega_tilde: 10.0,
            detuning: 5.0,
            omega1: 0.05,
            omega2: 0.0,
            momentum: 1.0,
        }
    }
}

impl IonSection {
    pub fn params(&self) -> IonParams {
        IonParams::new(
            self.eta,
            self.delta_spread,
            self.omega_tilde,
            self.detuning,
            self.omega1,
            self.omega2,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FockSection {
    pub n_max: usize,
}

impl Default for FockSection {
    fn default() -> Self {
        FockSection {
            n_max: dirac_edm::ion::FockConfig::DEFAULT_N_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Only read by `spectrum-sweep`; the mass and MDM sweeps always sweep
    /// their own quantity.
    pub quantity: SweepQuantity,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            quantity: SweepQuantity::EField,
            start: 0.0,
            stop: 1.0,
            count: 21,
        }
    }
}

impl SweepSection {
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        if self.count == 0 {
            return Err(CliError::Config("sweep.count must be at least 1".into()));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::Config(
                "sweep.start and sweep.stop must be finite".into(),
            ));
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        if self.stop <= self.start {
            return Err(CliError::Config(
                "sweep.stop must exceed sweep.start when count > 1".into(),
            ));
        }
        Ok(dirac_edm::series::uniform_grid(
            self.start, self.stop, self.count,
        ))
    }
}

/// Uniform time grid. `stop` wins over `periods` when both are given;
/// `periods` counts periods of the expected precession frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeSection {
    pub start: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    pub periods: f64,
    pub count: usize,
}

impl Default for TimeSection {
    fn default() -> Self {
        TimeSection {
            start: 0.0,
            stop: None,
            periods: 12.0,
            count: 1024,
        }
    }
}

impl TimeSection {
    pub fn grid(&self, expected_omega: f64) -> Result<Vec<f64>, CliError> {
        if self.count < 2 {
            return Err(CliError::Config("time.count must be at least 2".into()));
        }
        let stop = match self.stop {
            Some(stop) => stop,
            None => {
                if self.periods.is_nan() || self.periods <= 0.0 {
                    return Err(CliError::Config("time.periods must be positive".into()));
                }
                if expected_omega.is_nan() || expected_omega == 0.0 {
                    return Err(CliError::Config(
                        "the expected precession frequency is zero; give time.stop explicitly"
                            .into(),
                    ));
                }
                self.start + self.periods * 2.0 * PI / expected_omega.abs()
            }
        };
        if !(self.start.is_finite() && stop.is_finite()) || stop <= self.start {
            return Err(CliError::Config(format!(
                "time grid must be strictly increasing, got start {} and stop {stop}",
                self.start
            )));
        }
        Ok(dirac_edm::series::uniform_grid(
            self.start, stop, self.count,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrecessionSection {
    /// Population |b↑|² of the upper-spin positive-energy state.
    pub weight_up: f64,
    /// Phase of b↓ relative to b↑.
    pub relative_phase: f64,
    /// Observable used for frequency extraction.
    pub channel: String,
    /// Ion layer: repeat the run at twice `fock.n_max`.
    pub convergence_check: bool,
}

impl Default for PrecessionSection {
    fn default() -> Self {
        PrecessionSection {
            weight_up: 0.5,
            relative_phase: 0.0,
            channel: "sz".into(),
            convergence_check: true,
        }
    }
}

impl PrecessionSection {
    pub fn channel(&self) -> Result<Channel, CliError> {
        self.channel
            .parse()
            .map_err(|e: dirac_edm::Error| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MappingSection {
    pub field: [f64; 3],
    pub momentum: [f64; 3],
}

impl Default for MappingSection {
    fn default() -> Self {
        MappingSection {
            field: [0.3, -0.8, 0.5],
            momentum: [1.1, 0.4, -0.9],
        }
    }
}

/// Physical-unit inputs of the estimates table. The ion example is given
/// in rad/s (ħ = 1 makes every coupling an angular frequency).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatesSection {
    pub field_v_per_m: f64,
    pub edm_upper_e_cm: f64,
    pub edm_sm_e_cm: f64,
    pub ion: IonSection,
}

impl Default for EstimatesSection {
    fn default() -> Self {
        let two_pi = 2.0 * PI;
        EstimatesSection {
            field_v_per_m: 1e9,
            edm_upper_e_cm: 1e-26,
            edm_sm_e_cm: 1e-32,
            ion: IonSection {
                eta: 0.06,
                delta_spread: 1.0,
                omega_tilde: two_pi * 50e3,
                detuning: two_pi * 20e3,
                omega1: two_pi * 4e3,
                omega2: 0.0,
                momentum: 1.0,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    /// Worker threads for row computation; 0 uses every core.
    pub workers: usize,
    pub taylor_threshold: f64,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            workers: 1,
            taylor_threshold: dirac_edm::dirac_core::DEFAULT_TAYLOR_THRESHOLD,
        }
    }
}

/// Reads a config source: a TOML file, or a CSV/JSON result file carrying
/// an embedded configuration.
pub fn read_source(path: &Path) -> Result<toml::Table, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    if let Some(json) = crate::table::embedded_config(&text)? {
        return serde_json::from_value(json)
            .map_err(|e| CliError::Config(format!("embedded config in {}: {e}", path.display())));
    }
    text.parse::<toml::Table>()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Applies one `dotted.key=value` override. The value is read as a TOML
/// literal and falls back to a bare string.
pub fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<(), CliError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not key=value")))?;
    let key = key.trim();
    let raw = raw.trim();
    let value = format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));

    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("invalid override key `{key}`")));
    }
    let mut node = table;
    for part in &parts[..parts.len() - 1] {
        let entry = node
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry.as_table_mut().ok_or_else(|| {
            CliError::Config(format!("override `{key}`: `{part}` is not a table"))
        })?;
    }
    node.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

/// Resolves the configuration from an optional source file and overrides.
pub fn resolve(source: Option<&Path>, overrides: &[String]) -> Result<ScenarioConfig, CliError> {
    let mut table = match source {
        Some(path) => read_source(path)?,
        None => toml::Table::new(),
    };
    for o in overrides {
        apply_override(&mut table, o)?;
    }
    toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Config(e.to_string().trim().to_string()))
}
