use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::interactions::OperatorMatrix;
use super::state::QuantumState;
use crate::error::{ensure_finite, Error, Result};
use crate::series::{validate_time_grid, SpinTimeSeries};

/// Exact propagator for a time-independent ion Hamiltonian, via one dense
/// Hermitian eigendecomposition.
#[derive(Debug, Clone)]
pub struct IonPropagator {
    energies: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
    /// Initial state in the eigenbasis.
    coefficients: DVector<Complex64>,
    n_max: usize,
}

impl IonPropagator {
    pub fn new(state0: &QuantumState, h: &OperatorMatrix) -> Result<Self> {
        let dim = state0.dim();
        if h.nrows() != dim || h.ncols() != dim {
            return Err(Error::Invalid(format!(
                "Hamiltonian is {}x{} but the state has dimension {dim}",
                h.nrows(),
                h.ncols()
            )));
        }
        if h.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Invalid("Hamiltonian has non-finite entries".into()));
        }
        let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let defect = (h - h.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(Error::Invalid(format!(
                "Hamiltonian is not Hermitian (defect {defect:e})"
            )));
        }
        let eig = h.clone().symmetric_eigen();
        let coefficients = eig.eigenvectors.ad_mul(state0.amplitudes());
        Ok(IonPropagator {
            energies: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            coefficients,
            n_max: state0.n_max(),
        })
    }

    pub fn state_at(&self, t: f64) -> QuantumState {
        let phased = DVector::from_fn(self.coefficients.len(), |k, _| {
            self.coefficients[k] * Complex64::from_polar(1.0, -self.energies[k] * t)
        });
        QuantumState::from_raw(&self.eigenvectors * phased, self.n_max)
    }
}

/// Propagates `state0` under `h` and records the internal-level populations
/// and spin expectations (motion traced out) at each time.
pub fn simulate_ion(
    state0: &QuantumState,
    h: &OperatorMatrix,
    times: &[f64],
) -> Result<SpinTimeSeries> {
    validate_time_grid(times)?;
    for &t in times {
        ensure_finite("time", t)?;
    }
    let propagator = IonPropagator::new(state0, h)?;
    let mut series = SpinTimeSeries::with_capacity(times.len());
    for &t in times {
        let psi = propagator.state_at(t);
        series.push(
            t,
            psi.spin_expectation(),
            psi.level_populations(),
            psi.norm(),
        );
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac_core::Spinor4;
    use crate::ion::{assemble_h1d_ion, prepare_wavepacket, FockConfig, IonParams};
    use crate::series::uniform_grid;

    #[test]
    fn dimension_mismatch_is_rejected() {
        let cfg = FockConfig::new(8, 1.0).unwrap();
        let state = prepare_wavepacket(&cfg, 0.5, &Spinor4::basis(0)).unwrap();
        let h = OperatorMatrix::identity(16, 16);
        assert!(matches!(
            simulate_ion(&state, &h, &[0.0, 1.0]),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn decoupled_motion_is_frozen() {
        // Only the carriers act when the sideband coupling vanishes.
        let cfg = FockConfig::new(24, 1.0).unwrap();
        let ion = IonParams::new(0.1, 1.0, 0.0, 0.4, 0.3, 0.2);
        let h = assemble_h1d_ion(&ion, &cfg).unwrap();
        let state = prepare_wavepacket(&cfg, 1.2, &Spinor4::basis(0)).unwrap();
        let before = state.motional_populations();
        let propagator = IonPropagator::new(&state, &h).unwrap();
        for t in [0.5, 3.0, 17.0] {
            let after = propagator.state_at(t).motional_populations();
            for (x, y) in before.iter().zip(&after) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn norm_is_conserved() {
        let cfg = FockConfig::new(32, 1.0).unwrap();
        let ion = IonParams::new(0.1, 1.0, 5.0, 1.0, 0.1, 0.05);
        let h = assemble_h1d_ion(&ion, &cfg).unwrap();
        let state =
            prepare_wavepacket(&cfg, 1.0, &Spinor4::from_real([0.5, 0.5, 0.5, 0.5])).unwrap();
        let series = simulate_ion(&state, &h, &uniform_grid(0.0, 200.0, 101)).unwrap();
        for n in &series.norms {
            assert!((n - 1.0).abs() < 1e-10);
        }
    }
}
