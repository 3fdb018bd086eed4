use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Truncated motional Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    /// Number of Fock states kept, |0⟩ … |n_max − 1⟩.
    pub n_max: usize,
    /// Ground-state spread Δ entering p̂ = i(a† − a)/(2Δ).
    pub delta_spread: f64,
}

impl FockConfig {
    pub const DEFAULT_N_MAX: usize = 64;

    pub fn new(n_max: usize, delta_spread: f64) -> Result<Self> {
        let cfg = FockConfig {
            n_max,
            delta_spread,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::Invalid(format!(
                "n_max must be at least 2, got {}",
                self.n_max
            )));
        }
        ensure_finite("delta_spread", self.delta_spread)?;
        if self.delta_spread <= 0.0 {
            return Err(Error::Invalid(format!(
                "delta_spread must be positive, got {}",
                self.delta_spread
            )));
        }
        Ok(())
    }
}

/// Truncated annihilation and creation operators, `a|n⟩ = √n |n−1⟩`.
pub fn ladder_operators(cfg: &FockConfig) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = cfg.n_max;
    let mut a = DMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let a_dag = a.adjoint();
    (a, a_dag)
}

pub fn number_operator(cfg: &FockConfig) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&DVector::from_fn(cfg.n_max, |k, _| {
        Complex64::new(k as f64, 0.0)
    }))
}

/// p̂ = iħ(a† − a)/(2Δ) with ħ = 1.
pub fn momentum_operator(cfg: &FockConfig) -> DMatrix<Complex64> {
    let (a, a_dag) = ladder_operators(cfg);
    (a_dag - a) * Complex64::new(0.0, 0.5 / cfg.delta_spread)
}

/// Normalized coherent state |α⟩ truncated to `n_max` levels.
pub fn coherent_amplitudes(alpha: Complex64, n_max: usize) -> DVector<Complex64> {
    let mut amps = DVector::zeros(n_max);
    let mut term = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amps[0] = term;
    for k in 1..n_max {
        term *= alpha / (k as f64).sqrt();
        amps[k] = term;
    }
    let norm = amps.norm();
    amps / Complex64::new(norm, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> FockConfig {
        FockConfig::new(12, 1.0).unwrap()
    }

    #[test]
    fn commutator_is_identity_except_last() {
        let (a, ad) = ladder_operators(&cfg());
        let comm = &a * &ad - &ad * &a;
        let n = cfg().n_max;
        for r in 0..n {
            for c in 0..n {
                let expected = if r != c {
                    0.0
                } else if r == n - 1 {
                    -((n - 1) as f64)
                } else {
                    1.0
                };
                assert!((comm[(r, c)] - Complex64::new(expected, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn annihilates_vacuum() {
        let (a, _) = ladder_operators(&cfg());
        let vac = DVector::from_fn(cfg().n_max, |k, _| {
            Complex64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0)
        });
        assert_eq!((a * vac).norm(), 0.0);
    }

    #[test]
    fn number_operator_spectrum() {
        let (a, ad) = ladder_operators(&cfg());
        let n = ad * a;
        let diff = &n - number_operator(&cfg());
        assert!(diff.iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn ground_state_momentum_moments() {
        for delta in [1.0, 2.0, 0.3] {
            let cfg = FockConfig::new(8, delta).unwrap();
            let p = momentum_operator(&cfg);
            assert!((&p - p.adjoint()).iter().all(|z| z.norm() < 1e-14));
            assert_eq!(p[(0, 0)], Complex64::new(0.0, 0.0));
            let p2 = &p * &p;
            let want = (1.0 / (2.0 * delta)).powi(2);
            assert!((p2[(0, 0)].re - want).abs() < 1e-14);
        }
    }

    #[test]
    fn coherent_state_mean_momentum() {
        let cfg = FockConfig::new(64, 1.0).unwrap();
        let p_op = momentum_operator(&cfg);
        for target in [0.5, 1.0, -2.0] {
            // α = i·p·Δ/ħ
            let psi =
                coherent_amplitudes(Complex64::new(0.0, target * cfg.delta_spread), cfg.n_max);
            let mean = psi.dotc(&(&p_op * &psi));
            assert!((mean.re - target).abs() < 1e-10, "{mean}");
            assert!(mean.im.abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_tiny_truncation() {
        assert!(FockConfig::new(1, 1.0).is_err());
        assert!(FockConfig::new(4, 0.0).is_err());
    }
}
