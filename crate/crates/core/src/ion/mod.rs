//! Trapped-ion emulation of the 1D extended Dirac equation.
//!
//! A single ion supplies four internal levels a, b, c, d (the bispinor
//! components) and one motional mode truncated to `n_max` Fock states. The
//! product basis is ordered `|level⟩ ⊗ |n⟩`, i.e. index `level·n_max + n`.
//!
//! All operators are in natural units with ħ = 1. Frequencies in
//! [`IonParams`] are therefore energies of the emulated model divided by ħ.

mod dynamics;
mod fock;
mod frequency;
mod interactions;
mod levels;
mod mapping;
mod state;

pub use dynamics::{simulate_ion, IonPropagator};
pub use fock::{
    coherent_amplitudes, ladder_operators, momentum_operator, number_operator, FockConfig,
};
pub use frequency::{dominant_frequency, extract_frequency, FrequencyEstimate};
pub use interactions::{
    ajc_hamiltonian, assemble_h1d_ion, carrier_hamiltonian, direct_h1d_ion, embed_internal,
    jc_hamiltonian, kron_internal, OperatorMatrix, BLUE_SIDEBAND_PHASE, RED_SIDEBAND_PHASE,
};
pub use levels::{pauli_pair, Axis, Level, LevelPair};
pub use mapping::{
    dirac_operator_h1d, operator_identity_1d, verify_mapping_3d, MappingEntry, MappingReport,
    TermFamily, MAPPING_TOLERANCE,
};
pub use state::{
    prepare_wavepacket, prepare_wavepacket_with_tail, QuantumState, DEFAULT_TAIL_BOUND,
};

use crate::dirac_core::DiracParams;
use crate::error::{ensure_finite, Error, Result};

/// Control parameters of the trapped-ion emulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonParams {
    /// Lamb-Dicke parameter η.
    pub eta: f64,
    /// Ground-state position spread Δ.
    pub delta_spread: f64,
    /// Sideband Rabi frequency Ω̃.
    pub omega_tilde: f64,
    /// Sideband detuning δ.
    pub detuning: f64,
    /// Carrier Rabi frequency Ω⁽¹⁾ emulating the EDM coupling.
    pub omega1: f64,
    /// Carrier Rabi frequency Ω⁽²⁾ emulating the MDM coupling.
    pub omega2: f64,
    pub phi_r: f64,
    pub phi_b: f64,
    /// Trap frequency ν.
    pub trap_freq: f64,
    /// Ion mass M.
    pub ion_mass: f64,
}

impl IonParams {
    /// Sideband phases set to the values that turn a JC + AJC pair into a
    /// σ_x·p̂ coupling.
    pub fn new(
        eta: f64,
        delta_spread: f64,
        omega_tilde: f64,
        detuning: f64,
        omega1: f64,
        omega2: f64,
    ) -> Self {
        IonParams {
            eta,
            delta_spread,
            omega_tilde,
            detuning,
            omega1,
            omega2,
            phi_r: RED_SIDEBAND_PHASE,
            phi_b: BLUE_SIDEBAND_PHASE,
            trap_freq: 1.0,
            ion_mass: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta", self.eta),
            ("delta_spread", self.delta_spread),
            ("omega_tilde", self.omega_tilde),
            ("detuning", self.detuning),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("phi_r", self.phi_r),
            ("phi_b", self.phi_b),
            ("trap_freq", self.trap_freq),
            ("ion_mass", self.ion_mass),
        ] {
            ensure_finite(name, v)?;
        }
        if self.eta <= 0.0 {
            return Err(Error::Invalid(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if self.delta_spread <= 0.0 {
            return Err(Error::Invalid(format!(
                "delta_spread must be positive, got {}",
                self.delta_spread
            )));
        }
        if self.omega_tilde < 0.0 {
            return Err(Error::Invalid(format!(
                "omega_tilde must be non-negative, got {}",
                self.omega_tilde
            )));
        }
        if self.trap_freq <= 0.0 || self.ion_mass <= 0.0 {
            return Err(Error::Invalid(
                "trap_freq and ion_mass must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Emulated speed of light 2ηΔΩ̃.
    pub fn emulated_c(&self) -> f64 {
        2.0 * self.eta * self.delta_spread * self.omega_tilde
    }
}

/// Dirac parameters emulated by `ion`:
/// `c = 2ηΔΩ̃`, `mc² = 2δ`, `d_a·E_x = 2Ω⁽¹⁾`, `(μ_a/c)·E_x = 2Ω⁽²⁾`.
///
/// Only products with the field are fixed, so the field is taken as the
/// unit vector along x and the momentum is left at zero (set it with
/// [`DiracParams::with_momentum_x`]).
pub fn map_params(ion: &IonParams) -> Result<DiracParams> {
    ion.validate()?;
    let c = ion.emulated_c();
    if c <= 0.0 {
        return Err(Error::Domain("emulated c = 2ηΔΩ̃ must be positive".into()));
    }
    let params = DiracParams::one_d(
        2.0 * ion.detuning,
        c,
        2.0 * ion.omega1,
        2.0 * ion.omega2 * c,
        1.0,
        0.0,
    );
    params.validate()?;
    Ok(params)
}

/// Ion parameters emulating `dirac`, keeping η, Δ, the phases and the trap
/// data of `template` and solving for Ω̃, δ, Ω⁽¹⁾, Ω⁽²⁾.
pub fn map_params_inv(dirac: &DiracParams, template: &IonParams) -> Result<IonParams> {
    dirac.validate_1d()?;
    template.validate()?;
    if dirac.c_sim == 0.0 {
        return Err(Error::Domain("cannot emulate c = 0".into()));
    }
    let mut ion = *template;
    ion.omega_tilde = dirac.c_sim / (2.0 * template.eta * template.delta_spread);
    ion.detuning = dirac.mass_energy / 2.0;
    ion.omega1 = dirac.edm_coupling() / 2.0;
    ion.omega2 = dirac.mdm_coupling() / 2.0;
    Ok(ion)
}

/// Precession frequency in terms of the ion controls,
/// `2√(η²Δ²Ω̃²p² + Ω⁽²⁾² + (δ+Ω⁽¹⁾)²) − 2√(η²Δ²Ω̃²p² + Ω⁽²⁾² + (δ−Ω⁽¹⁾)²)`.
///
/// With Ω⁽²⁾ = 0 this is the familiar two-root expression; the MDM carrier
/// enters in the same place as (μ_a/c)E_x in the Dirac spectrum.
pub fn ion_precession_frequency(ion: &IonParams, momentum: f64) -> Result<f64> {
    ion.validate()?;
    ensure_finite("momentum", momentum)?;
    let kinetic = ion.eta * ion.delta_spread * ion.omega_tilde * momentum;
    let transverse = kinetic.hypot(ion.omega2);
    let up = transverse.hypot(ion.detuning + ion.omega1);
    let down = transverse.hypot(ion.detuning - ion.omega1);
    Ok(2.0 * up - 2.0 * down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac_core::precession_frequency;

    #[test]
    fn unit_construction() {
        let eta = 0.06;
        let ion = IonParams::new(eta, 1.0, 1.0 / (2.0 * eta), 0.5, 0.0, 0.0);
        let d = map_params(&ion).unwrap();
        assert!((d.c_sim - 1.0).abs() < 1e-15);
        assert_eq!(d.mass_energy, 1.0);
        assert_eq!(d.edm_coupling(), 0.0);
    }

    #[test]
    fn inverse_requires_positive_c() {
        let mut d = DiracParams::one_d(1.0, 1.0, 0.1, 0.0, 1.0, 0.0);
        d.c_sim = 0.0;
        let template = IonParams::new(0.1, 1.0, 1.0, 1.0, 0.0, 0.0);
        assert!(map_params_inv(&d, &template).is_err());
    }

    #[test]
    fn ion_formula_matches_dirac_frequency() {
        let ion = IonParams::new(0.1, 1.0, 5.0, 0.7, 0.05, 0.02);
        let p = 0.9;
        let dirac = map_params(&ion).unwrap().with_momentum_x(p);
        let a = ion_precession_frequency(&ion, p).unwrap();
        let b = precession_frequency(&dirac).unwrap();
        assert!((a - b).abs() < 1e-14, "{a} vs {b}");
    }

    #[test]
    fn validation() {
        let mut ion = IonParams::new(0.1, 1.0, 5.0, 0.7, 0.05, 0.02);
        ion.eta = 0.0;
        assert!(ion.validate().is_err());
        let mut ion = IonParams::new(0.1, 1.0, 5.0, 0.7, 0.05, 0.02);
        ion.trap_freq = -1.0;
        assert!(ion.validate().is_err());
    }
}
