//! Laser-ion interaction Hamiltonians and assembly of the 1D emulation
//! Hamiltonian.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::fock::{ladder_operators, momentum_operator, FockConfig};
use super::levels::{pauli_pair, Axis, LevelPair};
use super::IonParams;
use crate::dirac_numeric::Matrix4c;
use crate::error::{Error, Result};

/// Dense operator on the 4·n_max dimensional internal ⊗ motional space.
pub type OperatorMatrix = DMatrix<Complex64>;

/// Red-sideband phase that combines with [`BLUE_SIDEBAND_PHASE`] into σ_x·p̂.
pub const RED_SIDEBAND_PHASE: f64 = 3.0 * FRAC_PI_2;
pub const BLUE_SIDEBAND_PHASE: f64 = FRAC_PI_2;

/// `internal ⊗ motional`
pub fn kron_internal(internal: &Matrix4c, motional: &DMatrix<Complex64>) -> OperatorMatrix {
    let internal = DMatrix::from_fn(4, 4, |r, c| internal[(r, c)]);
    internal.kronecker(motional)
}

/// `internal ⊗ 1`
pub fn embed_internal(internal: &Matrix4c, n_max: usize) -> OperatorMatrix {
    kron_internal(internal, &DMatrix::identity(n_max, n_max))
}

/// Detuned red-sideband (Jaynes-Cummings) interaction
/// `ηΩ̃(σ⁺ a e^{iφ_r} + σ⁻ a† e^{−iφ_r}) + δσ_z` on `pair`.
pub fn jc_hamiltonian(
    pair: LevelPair,
    cfg: &FockConfig,
    omega_tilde: f64,
    eta: f64,
    detuning: f64,
    phi_r: f64,
) -> OperatorMatrix {
    let (a, a_dag) = ladder_operators(cfg);
    let phase = Complex64::from_polar(eta * omega_tilde, phi_r);
    kron_internal(&pair.raising(), &(a * phase))
        + kron_internal(&pair.lowering(), &(a_dag * phase.conj()))
        + stark_shift(pair, detuning, cfg.n_max)
}

/// Detuned blue-sideband (anti-Jaynes-Cummings) interaction
/// `ηΩ̃(σ⁺ a† e^{iφ_b} + σ⁻ a e^{−iφ_b}) + δσ_z` on `pair`.
pub fn ajc_hamiltonian(
    pair: LevelPair,
    cfg: &FockConfig,
    omega_tilde: f64,
    eta: f64,
    detuning: f64,
    phi_b: f64,
) -> OperatorMatrix {
    let (a, a_dag) = ladder_operators(cfg);
    let phase = Complex64::from_polar(eta * omega_tilde, phi_b);
    kron_internal(&pair.raising(), &(a_dag * phase))
        + kron_internal(&pair.lowering(), &(a * phase.conj()))
        + stark_shift(pair, detuning, cfg.n_max)
}

fn stark_shift(pair: LevelPair, detuning: f64, n_max: usize) -> OperatorMatrix {
    embed_internal(
        &(pauli_pair(pair, Axis::Z) * Complex64::new(detuning, 0.0)),
        n_max,
    )
}

/// Carrier interaction `Ω(σ⁺e^{iφ} + σ⁻e^{−iφ})` on the internal levels.
///
/// φ = 0 gives Ωσ_x, φ = π gives −Ωσ_x and φ = π/2 gives −Ωσ_y.
pub fn carrier_hamiltonian(pair: LevelPair, rabi: f64, phase: f64) -> Matrix4c {
    let p = Complex64::from_polar(rabi, phase);
    pair.raising() * p + pair.lowering() * p.conj()
}

fn check_spread(ion: &IonParams, cfg: &FockConfig) -> Result<()> {
    ion.validate()?;
    cfg.validate()?;
    let rel = (ion.delta_spread - cfg.delta_spread).abs() / cfg.delta_spread;
    if rel > 1e-12 {
        return Err(Error::Invalid(format!(
            "ion delta_spread {} differs from Fock config delta_spread {}",
            ion.delta_spread, cfg.delta_spread
        )));
    }
    Ok(())
}

/// Emulation Hamiltonian
///
/// ```text
/// 2ηΔΩ̃(σ_x^ad + σ_x^bc)p̂ + 2δ(σ_z^ad + σ_z^bc)
///     + 2Ω⁽¹⁾(σ_x^ab − σ_x^cd) − 2Ω⁽²⁾(σ_y^ad + σ_y^bc)
/// ```
///
/// assembled from a JC + AJC pair on each of a↔d and b↔c (phases taken
/// from `ion`), and four carriers. A single carrier contributes Ω·σ, so the
/// carriers are driven at Rabi frequency 2Ω⁽¹⁾ and 2Ω⁽²⁾.
pub fn assemble_h1d_ion(ion: &IonParams, cfg: &FockConfig) -> Result<OperatorMatrix> {
    check_spread(ion, cfg)?;
    let mut h = OperatorMatrix::zeros(4 * cfg.n_max, 4 * cfg.n_max);
    for pair in [LevelPair::AD, LevelPair::BC] {
        h += jc_hamiltonian(pair, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_r);
        h += ajc_hamiltonian(pair, cfg, ion.omega_tilde, ion.eta, ion.detuning, ion.phi_b);
    }
    let carriers = carrier_hamiltonian(LevelPair::AB, 2.0 * ion.omega1, 0.0)
        + carrier_hamiltonian(LevelPair::CD, 2.0 * ion.omega1, PI)
        + carrier_hamiltonian(LevelPair::AD, 2.0 * ion.omega2, FRAC_PI_2)
        + carrier_hamiltonian(LevelPair::BC, 2.0 * ion.omega2, FRAC_PI_2);
    h += embed_internal(&carriers, cfg.n_max);
    Ok(h)
}

/// The same Hamiltonian written term by term from Pauli pairs and p̂,
/// without going through the interaction builders.
pub fn direct_h1d_ion(ion: &IonParams, cfg: &FockConfig) -> Result<OperatorMatrix> {
    check_spread(ion, cfg)?;
    let c = |x: f64| Complex64::new(x, 0.0);
    let sx = |p| pauli_pair(p, Axis::X);
    let sy = |p| pauli_pair(p, Axis::Y);
    let sz = |p| pauli_pair(p, Axis::Z);
    let coupling = (sx(LevelPair::AD) + sx(LevelPair::BC)) * c(ion.emulated_c());
    let internal = (sz(LevelPair::AD) + sz(LevelPair::BC)) * c(2.0 * ion.detuning)
        + (sx(LevelPair::AB) - sx(LevelPair::CD)) * c(2.0 * ion.omega1)
        - (sy(LevelPair::AD) + sy(LevelPair::BC)) * c(2.0 * ion.omega2);
    Ok(kron_internal(&coupling, &momentum_operator(cfg)) + embed_internal(&internal, cfg.n_max))
}
