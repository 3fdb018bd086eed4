//! Physical constants, the handful of unit conversions the scenarios need,
//! and the mapping between physical inputs and the dimensionless (ħ = 1)
//! parameters used by every other module.
//!
//! Constants are CODATA 2018 exact or recommended values.

use crate::dirac_core::DiracParams;
use crate::error::{ensure_finite, Error, Result};

/// Reduced Planck constant in eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
/// Reduced Planck constant in J·s.
pub const HBAR_J_S: f64 = 1.054_571_817e-34;
/// Speed of light in m/s.
pub const C_LIGHT: f64 = 299_792_458.0;
/// Elementary charge in C; also the number of J per eV.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Neutron rest energy in eV.
pub const NEUTRON_REST_ENERGY_EV: f64 = 939.565_420_52e6;
/// Neutron magnetic moment in J/T.
pub const NEUTRON_MAGNETIC_MOMENT_J_PER_T: f64 = -9.662_365_1e-27;
/// Atomic mass unit in kg.
pub const ATOMIC_MASS_KG: f64 = 1.660_539_066_60e-27;

const M_PER_CM: f64 = 1e-2;
const V_PER_M_PER_MV_PER_CM: f64 = 1e8;

/// The compiled-in constants as a value, for callers that want to record
/// them alongside results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar_ev_s: f64,
    pub hbar_j_s: f64,
    pub c_light: f64,
    pub e_charge: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar_ev_s: HBAR_EV_S,
        hbar_j_s: HBAR_J_S,
        c_light: C_LIGHT,
        e_charge: E_CHARGE,
    };
}

pub fn ev_to_joule(ev: f64) -> f64 {
    ev * E_CHARGE
}

pub fn joule_to_ev(joule: f64) -> f64 {
    joule / E_CHARGE
}

pub fn e_cm_to_coulomb_m(e_cm: f64) -> f64 {
    e_cm * E_CHARGE * M_PER_CM
}

pub fn coulomb_m_to_e_cm(coulomb_m: f64) -> f64 {
    coulomb_m / (E_CHARGE * M_PER_CM)
}

pub fn mv_per_cm_to_v_per_m(mv_per_cm: f64) -> f64 {
    mv_per_cm * V_PER_M_PER_MV_PER_CM
}

pub fn v_per_m_to_mv_per_cm(v_per_m: f64) -> f64 {
    v_per_m / V_PER_M_PER_MV_PER_CM
}

/// Interaction energy d·E in eV for a dipole in e·cm and a field in V/m.
pub fn dipole_energy_ev(edm_e_cm: f64, e_field_v_per_m: f64) -> f64 {
    edm_e_cm * e_field_v_per_m * M_PER_CM
}

/// Whether quantities are physical or already dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Physical,
    Natural,
}

/// Unit convention. One natural energy unit is `energy_scale_ev` eV and the
/// natural field unit is `field_scale_v_per_m`; time is measured in
/// ħ/energy_scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub mode: UnitMode,
    pub energy_scale_ev: f64,
    pub field_scale_v_per_m: f64,
}

impl UnitSystem {
    pub fn physical(energy_scale_ev: f64, field_scale_v_per_m: f64) -> Result<Self> {
        let u = UnitSystem {
            mode: UnitMode::Physical,
            energy_scale_ev,
            field_scale_v_per_m,
        };
        u.validate()?;
        Ok(u)
    }

    /// Inputs are already dimensionless; conversions are identities.
    pub fn natural() -> Self {
        UnitSystem {
            mode: UnitMode::Natural,
            energy_scale_ev: 1.0,
            field_scale_v_per_m: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("energy_scale", self.energy_scale_ev),
            ("field_scale", self.field_scale_v_per_m),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Invalid(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Natural angular frequency → rad/s.
    pub fn angular_frequency_to_physical(&self, omega: f64) -> f64 {
        match self.mode {
            UnitMode::Physical => omega * self.energy_scale_ev / HBAR_EV_S,
            UnitMode::Natural => omega,
        }
    }

    /// Natural time → s.
    pub fn time_to_physical(&self, t: f64) -> f64 {
        match self.mode {
            UnitMode::Physical => t * HBAR_EV_S / self.energy_scale_ev,
            UnitMode::Natural => t,
        }
    }

    pub fn energy_to_physical(&self, e: f64) -> f64 {
        match self.mode {
            UnitMode::Physical => e * self.energy_scale_ev,
            UnitMode::Natural => e,
        }
    }
}

/// Physical inputs for the Dirac model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass_energy_ev: f64,
    /// c·p⃗ in eV.
    pub momentum_ev: [f64; 3],
    pub edm_e_cm: f64,
    pub mdm_j_per_t: f64,
    pub e_field_v_per_m: [f64; 3],
}

impl PhysicalParams {
    fn validate(&self) -> Result<()> {
        ensure_finite("mass_energy", self.mass_energy_ev)?;
        ensure_finite("edm", self.edm_e_cm)?;
        ensure_finite("mdm", self.mdm_j_per_t)?;
        for j in 0..3 {
            ensure_finite("momentum", self.momentum_ev[j])?;
            ensure_finite("e_field", self.e_field_v_per_m[j])?;
        }
        Ok(())
    }
}

/// Converts physical inputs to dimensionless parameters with c = 1.
///
/// Energies are divided by the energy scale and the field by the field
/// scale; the dipole moments absorb the field scale so that
/// `edm·E = d·E / energy_scale` and `mdm·E = (μ/c)·E / energy_scale`.
pub fn to_natural(params: &PhysicalParams, units: &UnitSystem) -> Result<DiracParams> {
    params.validate()?;
    units.validate()?;
    let es = units.energy_scale_ev;
    let fs = units.field_scale_v_per_m;
    let (edm, mdm) = match units.mode {
        UnitMode::Physical => (
            dipole_energy_ev(params.edm_e_cm, fs) / es,
            joule_to_ev(params.mdm_j_per_t * fs / C_LIGHT) / es,
        ),
        UnitMode::Natural => (params.edm_e_cm, params.mdm_j_per_t),
    };
    let out = DiracParams {
        mass_energy: params.mass_energy_ev / es,
        c_sim: 1.0,
        edm,
        mdm,
        e_field: params.e_field_v_per_m.map(|e| e / fs),
        momentum: params.momentum_ev.map(|p| p / es),
    };
    out.validate()?;
    Ok(out)
}

/// Inverse of [`to_natural`].
pub fn from_natural(params: &DiracParams, units: &UnitSystem) -> Result<PhysicalParams> {
    params.validate()?;
    units.validate()?;
    let es = units.energy_scale_ev;
    let fs = units.field_scale_v_per_m;
    let (edm_e_cm, mdm_j_per_t) = match units.mode {
        UnitMode::Physical => (
            params.edm * es / (fs * M_PER_CM),
            ev_to_joule(params.mdm / params.c_sim * es) * C_LIGHT / fs,
        ),
        UnitMode::Natural => (params.edm, params.mdm / params.c_sim),
    };
    Ok(PhysicalParams {
        mass_energy_ev: params.mass_energy * es,
        momentum_ev: params.momentum.map(|p| params.c_sim * p * es),
        edm_e_cm,
        mdm_j_per_t,
        e_field_v_per_m: params.e_field.map(|e| e * fs),
    })
}

/// Leading-order spin splitting and precession of a neutral particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutronEstimate {
    pub splitting_ev: f64,
    pub omega_rad_per_s: f64,
    /// `None` when the splitting vanishes and the spin never precesses.
    pub period_s: Option<f64>,
}

/// ΔE ≈ 2·d·E with the MDM contribution neglected; ω = ΔE/ħ.
pub fn neutron_estimate(e_field_v_per_m: f64, edm_e_cm: f64) -> Result<NeutronEstimate> {
    ensure_finite("e_field", e_field_v_per_m)?;
    ensure_finite("edm", edm_e_cm)?;
    if e_field_v_per_m <= 0.0 {
        return Err(Error::Invalid(format!(
            "field must be positive, got {e_field_v_per_m}"
        )));
    }
    if edm_e_cm < 0.0 {
        return Err(Error::Invalid(format!(
            "edm must be non-negative, got {edm_e_cm}"
        )));
    }
    let splitting_ev = 2.0 * edm_e_cm * e_field_v_per_m * M_PER_CM;
    let omega_rad_per_s = splitting_ev / HBAR_EV_S;
    let period_s = (omega_rad_per_s > 0.0).then(|| 2.0 * std::f64::consts::PI / omega_rad_per_s);
    Ok(NeutronEstimate {
        splitting_ev,
        omega_rad_per_s,
        period_s,
    })
}

/// Position spread of the motional ground state, √(ħ/2Mν), in metres.
pub fn ground_state_spread_m(ion_mass_kg: f64, trap_freq_rad_per_s: f64) -> f64 {
    (HBAR_J_S / (2.0 * ion_mass_kg * trap_freq_rad_per_s)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_scale() {
        let phys = PhysicalParams {
            mass_energy_ev: 1.0,
            momentum_ev: [0.0; 3],
            edm_e_cm: 0.0,
            mdm_j_per_t: 0.0,
            e_field_v_per_m: [0.0; 3],
        };
        let p = to_natural(&phys, &UnitSystem::physical(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(p.mass_energy, 1.0);
        assert_eq!(p.c_sim, 1.0);
    }

    #[test]
    fn coupling_scaled_to_unity() {
        // d = 1e-26 e·cm in 1e7 V/m gives d·E = 1e-21 eV; use that as the scale.
        let phys = PhysicalParams {
            mass_energy_ev: NEUTRON_REST_ENERGY_EV,
            momentum_ev: [0.0; 3],
            edm_e_cm: 1e-26,
            mdm_j_per_t: 0.0,
            e_field_v_per_m: [1e7, 0.0, 0.0],
        };
        let units = UnitSystem::physical(1e-21, 1e7).unwrap();
        let p = to_natural(&phys, &units).unwrap();
        assert!((p.edm_coupling() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dipole_energy_at_ten_mv_per_cm() {
        // 1e-26 e·cm × 1e7 V/cm = 1e-19 eV; the splitting is twice that.
        let field = mv_per_cm_to_v_per_m(10.0);
        assert_eq!(field, 1e9);
        let de = dipole_energy_ev(1e-26, field);
        assert!((de / 1e-19 - 1.0).abs() < 1e-12);
        let est = neutron_estimate(field, 1e-26).unwrap();
        assert!((est.splitting_ev / 2e-19 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_edm_never_precesses() {
        let est = neutron_estimate(1e9, 0.0).unwrap();
        assert_eq!(est.splitting_ev, 0.0);
        assert_eq!(est.omega_rad_per_s, 0.0);
        assert_eq!(est.period_s, None);
    }

    #[test]
    fn estimate_rejects_bad_inputs() {
        assert!(neutron_estimate(0.0, 1e-26).is_err());
        assert!(neutron_estimate(1e9, -1e-26).is_err());
        assert!(neutron_estimate(f64::INFINITY, 1e-26).is_err());
    }

    #[test]
    fn unit_system_validation() {
        assert!(UnitSystem::physical(0.0, 1.0).is_err());
        assert!(UnitSystem::physical(1.0, f64::NAN).is_err());
    }

    #[test]
    fn calcium_ground_state_spread() {
        // 40Ca+ in a 2π × 1 MHz trap: about 11 nm.
        let dx = ground_state_spread_m(40.0 * ATOMIC_MASS_KG, 2.0 * std::f64::consts::PI * 1e6);
        assert!(dx > 1.0e-8 && dx < 1.2e-8, "{dx}");
    }
}
