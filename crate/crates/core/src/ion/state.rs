use nalgebra::DVector;
use num_complex::Complex64;

use super::fock::{coherent_amplitudes, momentum_operator, FockConfig};
use super::interactions::OperatorMatrix;
use crate::dirac_core::{Spinor4, NORM_TOLERANCE};
use crate::dirac_numeric::{DiracMatrixSet, Matrix4c};
use crate::error::{ensure_finite, Error, Result};

/// Largest population allowed in the top 10% of Fock levels after preparation.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-8;

/// State on the internal ⊗ motional space, index `level·n_max + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<Complex64>,
    n_max: usize,
}

impl QuantumState {
    pub fn new(amplitudes: DVector<Complex64>, n_max: usize) -> Result<Self> {
        if n_max < 2 || amplitudes.len() != 4 * n_max {
            return Err(Error::Invalid(format!(
                "expected {} amplitudes for n_max = {n_max}, got {}",
                4 * n_max,
                amplitudes.len()
            )));
        }
        let state = QuantumState { amplitudes, n_max };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Invalid(format!(
                "state must be normalized, norm is {norm}"
            )));
        }
        Ok(state)
    }

    /// `internal ⊗ motional` without normalization checks.
    pub(crate) fn product(internal: &Spinor4, motional: &DVector<Complex64>) -> Self {
        let n_max = motional.len();
        let amplitudes = DVector::from_fn(4 * n_max, |k, _| {
            internal.0[k / n_max] * motional[k % n_max]
        });
        QuantumState { amplitudes, n_max }
    }

    pub(crate) fn from_raw(amplitudes: DVector<Complex64>, n_max: usize) -> Self {
        QuantumState { amplitudes, n_max }
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn level_populations(&self) -> [f64; 4] {
        std::array::from_fn(|level| {
            self.amplitudes
                .rows(level * self.n_max, self.n_max)
                .norm_squared()
        })
    }

    pub fn motional_populations(&self) -> Vec<f64> {
        (0..self.n_max)
            .map(|n| {
                (0..4)
                    .map(|level| self.amplitudes[level * self.n_max + n].norm_sqr())
                    .sum()
            })
            .collect()
    }

    /// Internal-level density matrix with the motion traced out.
    pub fn reduced_internal(&self) -> Matrix4c {
        let n = self.n_max;
        Matrix4c::from_fn(|r, c| {
            self.amplitudes
                .rows(c * n, n)
                .dotc(&self.amplitudes.rows(r * n, n))
        })
    }

    /// ⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩ with the spin acting on the internal factor.
    pub fn spin_expectation(&self) -> [f64; 3] {
        let rho = self.reduced_internal();
        let set = DiracMatrixSet::standard();
        set.spin.map(|s| (rho * s).trace().re)
    }

    pub fn expectation(&self, op: &OperatorMatrix) -> Result<Complex64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::Invalid(format!(
                "operator is {}x{}, state dimension is {}",
                op.nrows(),
                op.ncols(),
                self.dim()
            )));
        }
        Ok(self.amplitudes.dotc(&(op * &self.amplitudes)))
    }

    /// ⟨p̂⟩ of the motional factor.
    pub fn mean_momentum(&self, cfg: &FockConfig) -> Result<f64> {
        if cfg.n_max != self.n_max {
            return Err(Error::Invalid(
                "Fock config does not match the state".into(),
            ));
        }
        let p = momentum_operator(cfg);
        let n = self.n_max;
        let mean: Complex64 = (0..4)
            .map(|level| {
                let block = self.amplitudes.rows(level * n, n);
                block.dotc(&(&p * block))
            })
            .sum();
        Ok(mean.re)
    }
}

/// Prepares `spinor ⊗ |α⟩` with the coherent amplitude α = i·p·Δ (ħ = 1),
/// whose mean momentum is `target_p` and momentum spread 1/(2Δ).
pub fn prepare_wavepacket(
    cfg: &FockConfig,
    target_p: f64,
    spinor: &Spinor4,
) -> Result<QuantumState> {
    prepare_wavepacket_with_tail(cfg, target_p, spinor, DEFAULT_TAIL_BOUND)
}

pub fn prepare_wavepacket_with_tail(
    cfg: &FockConfig,
    target_p: f64,
    spinor: &Spinor4,
    tail_bound: f64,
) -> Result<QuantumState> {
    cfg.validate()?;
    ensure_finite("target momentum", target_p)?;
    spinor.require_normalized()?;
    let alpha = Complex64::new(0.0, target_p * cfg.delta_spread);
    let a = alpha.norm();
    if a * a + 5.0 * a >= cfg.n_max as f64 {
        return Err(Error::Truncation(format!(
            "coherent amplitude |α| = {a} needs |α|² + 5|α| < n_max = {}; increase n_max",
            cfg.n_max
        )));
    }
    let motional = coherent_amplitudes(alpha, cfg.n_max);
    let tail_start = cfg.n_max - cfg.n_max.div_ceil(10);
    let tail: f64 = motional.iter().skip(tail_start).map(|z| z.norm_sqr()).sum();
    if tail >= tail_bound {
        return Err(Error::Truncation(format!(
            "population {tail:e} in the top Fock levels exceeds {tail_bound:e}; increase n_max"
        )));
    }
    let state = QuantumState::product(spinor, &motional);
    let achieved = state.mean_momentum(cfg)?;
    let scale = target_p.abs().max(1e-300);
    if target_p != 0.0 && ((achieved - target_p) / scale).abs() > 1e-6 {
        return Err(Error::Truncation(format!(
            "prepared ⟨p⟩ = {achieved} misses the target {target_p}; increase n_max"
        )));
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spinor() -> Spinor4 {
        Spinor4::from_real([0.5, 0.5, 0.5, 0.5])
    }

    #[test]
    fn zero_momentum_is_ground_state() {
        let cfg = FockConfig::new(16, 1.0).unwrap();
        let state = prepare_wavepacket(&cfg, 0.0, &spinor()).unwrap();
        let motion = state.motional_populations();
        assert!((motion[0] - 1.0).abs() < 1e-15);
        assert_eq!(state.level_populations(), [0.25; 4]);
    }

    #[test]
    fn mean_momentum_hits_target() {
        let cfg = FockConfig::new(64, 1.0).unwrap();
        let state = prepare_wavepacket(&cfg, 1.0, &spinor()).unwrap();
        assert!((state.mean_momentum(&cfg).unwrap() - 1.0).abs() < 1e-6);
        assert!((state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unsafe_amplitude_is_rejected() {
        let cfg = FockConfig::new(16, 1.0).unwrap();
        match prepare_wavepacket(&cfg, 3.0, &spinor()) {
            Err(Error::Truncation(msg)) => assert!(msg.contains("n_max")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduced_state_of_product() {
        let cfg = FockConfig::new(20, 1.0).unwrap();
        let s = Spinor4::new([
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let state = prepare_wavepacket(&cfg, 0.7, &s).unwrap();
        let rho = state.reduced_internal();
        for r in 0..4 {
            for c in 0..4 {
                let want = s.0[r] * s.0[c].conj();
                assert!((rho[(r, c)] - want).norm() < 1e-14);
            }
        }
        let spin = state.spin_expectation();
        let direct = crate::dirac_core::spin_expectation(&s).unwrap();
        for j in 0..3 {
            assert!((spin[j] - direct[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn constructor_checks_dimension_and_norm() {
        assert!(QuantumState::new(DVector::zeros(7), 2).is_err());
        assert!(QuantumState::new(DVector::zeros(8), 2).is_err());
    }
}
