//! Dense 4×4 construction, diagonalization and propagation of the extended
//! Dirac Hamiltonian at fixed momentum.
//!
//! The model has plane-wave solutions in a constant field, so the fixed
//! momentum block is exact. Matrices are in the standard representation,
//! `β = diag(I, −I)`, `α_j = [[0, σ_j], [σ_j, 0]]`, with rows/columns ordered
//! as the internal levels (a, b, c, d).

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::dirac_core::{spin_expectation, DiracParams, Spinor4};
use crate::error::{ensure_finite, Error, Result};
use crate::series::{validate_time_grid, SpinTimeSeries};

pub type Matrix4c = Matrix4<Complex64>;
type Matrix2c = Matrix2<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Pauli matrix σ_x, σ_y or σ_z for `axis` = 0, 1, 2.
pub fn pauli(axis: usize) -> Matrix2c {
    match axis {
        0 => Matrix2c::new(ZERO, ONE, ONE, ZERO),
        1 => Matrix2c::new(ZERO, -I, I, ZERO),
        2 => Matrix2c::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli axis must be 0, 1 or 2, got {axis}"),
    }
}

fn blocks(tl: &Matrix2c, tr: &Matrix2c, bl: &Matrix2c, br: &Matrix2c) -> Matrix4c {
    let mut m = Matrix4c::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(tl);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(tr);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(bl);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(br);
    m
}

/// Dirac matrices α⃗, β and the spin vector S⃗ = −(i/4) α⃗×α⃗.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrixSet {
    pub alpha: [Matrix4c; 3],
    pub beta: Matrix4c,
    pub spin: [Matrix4c; 3],
}

impl DiracMatrixSet {
    pub fn standard() -> Self {
        let zero = Matrix2c::zeros();
        let id = Matrix2c::identity();
        let alpha: [Matrix4c; 3] = std::array::from_fn(|j| {
            let s = pauli(j);
            blocks(&zero, &s, &s, &zero)
        });
        let beta = blocks(&id, &zero, &zero, &(-id));
        // (α×α)_j = α_k α_l − α_l α_k for cyclic (j, k, l)
        let spin = std::array::from_fn(|j| {
            let k = (j + 1) % 3;
            let l = (j + 2) % 3;
            let cross = alpha[k] * alpha[l] - alpha[l] * alpha[k];
            cross * Complex64::new(0.0, -0.25)
        });
        DiracMatrixSet { alpha, beta, spin }
    }
}

/// Largest elementwise deviation of `h` from its adjoint.
pub fn hermiticity_defect(h: &Matrix4c) -> f64 {
    (h - h.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// `c α_x p_x + β mc² + 2 d_a β S_x E_x + i (μ_a/c) β α_x E_x`.
pub fn build_h1d(params: &DiracParams) -> Result<Matrix4c> {
    params.validate_1d()?;
    let set = DiracMatrixSet::standard();
    let ax = &set.alpha[0];
    let b = &set.beta;
    let h = ax * re(params.kinetic_x())
        + b * re(params.mass_energy)
        + (b * set.spin[0]) * re(2.0 * params.edm_coupling())
        + (b * ax) * Complex64::new(0.0, params.mdm_coupling());
    Ok(h)
}

/// Block form of the B = 0 Hamiltonian in three dimensions:
///
/// ```text
/// [ mc² + d_a σ·E              c σ·p + i (μ_a/c) σ·E ]
/// [ c σ·p − i (μ_a/c) σ·E     −mc² − d_a σ·E         ]
/// ```
pub fn build_h3d(params: &DiracParams) -> Result<Matrix4c> {
    params.validate()?;
    let dot = |v: &[f64; 3]| -> Matrix2c { (0..3).map(|j| pauli(j) * re(v[j])).sum() };
    let sigma_e = dot(&params.e_field);
    let sigma_p = dot(&params.momentum);
    let id = Matrix2c::identity();
    let diag = id * re(params.mass_energy) + sigma_e * re(params.edm);
    let kinetic = sigma_p * re(params.c_sim);
    let mdm = sigma_e * Complex64::new(0.0, params.mdm / params.c_sim);
    Ok(blocks(&diag, &(kinetic + mdm), &(kinetic - mdm), &(-diag)))
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a 4×4 Hermitian
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: [f64; 4],
    pub vectors: [Spinor4; 4],
}

fn require_hermitian(h: &Matrix4c) -> Result<()> {
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Invalid("matrix has non-finite entries".into()));
    }
    let defect = hermiticity_defect(h);
    if defect > 1e-12 * scale {
        return Err(Error::Invalid(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    Ok(())
}

/// Diagonalizes a Hermitian 4×4 matrix.
///
/// Eigenvalues are ascending. Within a (numerically) degenerate cluster the
/// eigenvectors are rotated to diagonalize S_x and ordered by ⟨S_x⟩
/// descending, which gives stable ↑/↓ labels at zero splitting.
pub fn diagonalize(h: &Matrix4c) -> Result<EigenSystem> {
    require_hermitian(h)?;
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut values = [0.0; 4];
    let mut vectors = [Spinor4::basis(0); 4];
    for (slot, &k) in order.iter().enumerate() {
        values[slot] = eig.eigenvalues[k];
        vectors[slot] = Spinor4(eig.eigenvectors.column(k).into_owned());
    }

    let spin_x = DiracMatrixSet::standard().spin[0];
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-12 * scale;
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && values[end] - values[end - 1] <= tol {
            end += 1;
        }
        if end - start > 1 {
            resolve_cluster(&spin_x, &mut values[start..end], &mut vectors[start..end]);
        }
        start = end;
    }
    Ok(EigenSystem { values, vectors })
}

fn resolve_cluster(spin_x: &Matrix4c, values: &mut [f64], vectors: &mut [Spinor4]) {
    let k = vectors.len();
    let projected =
        DMatrix::<Complex64>::from_fn(k, k, |r, c| vectors[r].0.dotc(&(spin_x * vectors[c].0)));
    let eig = projected.symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mean = values.iter().sum::<f64>() / k as f64;
    let rotated: Vec<Spinor4> = order
        .iter()
        .map(|&col| {
            let mut v = nalgebra::Vector4::zeros();
            for (r, old) in vectors.iter().enumerate() {
                v += old.0 * eig.eigenvectors[(r, col)];
            }
            Spinor4(v)
        })
        .collect();
    vectors.copy_from_slice(&rotated);
    values.iter_mut().for_each(|v| *v = mean);
}

/// Exact propagator `e^{−iHt}` for a fixed 4×4 Hamiltonian (ħ = 1).
#[derive(Debug, Clone)]
pub struct Propagator4 {
    eigen: EigenSystem,
}

impl Propagator4 {
    pub fn new(h: &Matrix4c) -> Result<Self> {
        Ok(Propagator4 {
            eigen: diagonalize(h)?,
        })
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    pub fn apply(&self, state: &Spinor4, t: f64) -> Spinor4 {
        let mut out = nalgebra::Vector4::zeros();
        for (value, vector) in self.eigen.values.iter().zip(&self.eigen.vectors) {
            let amp = vector.inner(state) * Complex64::from_polar(1.0, -value * t);
            out += vector.0 * amp;
        }
        Spinor4(out)
    }
}

/// `e^{−iHt}·state`.
pub fn propagate(state: &Spinor4, h: &Matrix4c, t: f64) -> Result<Spinor4> {
    ensure_finite("t", t)?;
    state.require_normalized()?;
    Ok(Propagator4::new(h)?.apply(state, t))
}

/// Spin expectations and level populations of `e^{−iHt}·state0` on a time grid.
pub fn spin_series(state0: &Spinor4, h: &Matrix4c, times: &[f64]) -> Result<SpinTimeSeries> {
    validate_time_grid(times)?;
    state0.require_normalized()?;
    let propagator = Propagator4::new(h)?;
    let mut series = SpinTimeSeries::with_capacity(times.len());
    for &t in times {
        let psi = propagator.apply(state0, t);
        series.push(t, spin_expectation(&psi)?, psi.populations(), psi.norm());
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &Matrix4c) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn clifford_algebra() {
        let set = DiracMatrixSet::standard();
        let id = Matrix4c::identity();
        for i in 0..3 {
            for j in 0..3 {
                let anti = set.alpha[i] * set.alpha[j] + set.alpha[j] * set.alpha[i];
                let expected = if i == j {
                    id * re(2.0)
                } else {
                    Matrix4c::zeros()
                };
                assert!(max_abs(&(anti - expected)) < 1e-14);
            }
            let anti = set.alpha[i] * set.beta + set.beta * set.alpha[i];
            assert!(max_abs(&anti) < 1e-14);
        }
        assert!(max_abs(&(set.beta * set.beta - id)) < 1e-14);
    }

    #[test]
    fn spin_is_block_diagonal_half_pauli() {
        let set = DiracMatrixSet::standard();
        let zero = Matrix2c::zeros();
        for j in 0..3 {
            let half = pauli(j) * re(0.5);
            let expected = blocks(&half, &zero, &zero, &half);
            assert!(max_abs(&(set.spin[j] - expected)) < 1e-15);
        }
    }

    #[test]
    fn rest_mass_matrix() {
        let h = build_h1d(&DiracParams::one_d(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
        let expected = Matrix4c::from_diagonal(&nalgebra::Vector4::new(ONE, ONE, -ONE, -ONE));
        assert_eq!(h, expected);
        let eig = diagonalize(&h).unwrap();
        assert_eq!(eig.values, [-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn mdm_term_alone_is_hermitian() {
        let h = build_h1d(&DiracParams::one_d(0.0, 1.0, 0.0, 0.7, 1.3, 0.0)).unwrap();
        assert!(hermiticity_defect(&h) < 1e-14);
        assert!(max_abs(&h) > 0.5);
    }

    #[test]
    fn h3d_reduces_to_h1d() {
        let p = DiracParams::one_d(1.2, 0.9, 0.3, 0.2, 0.8, -0.5);
        let a = build_h1d(&p).unwrap();
        let b = build_h3d(&p).unwrap();
        assert!(max_abs(&(a - b)) < 1e-15);
    }

    #[test]
    fn free_3d_spectrum_is_doubly_degenerate() {
        let p = DiracParams {
            mass_energy: 1.5,
            c_sim: 1.0,
            edm: 0.4,
            mdm: 0.3,
            e_field: [0.0; 3],
            momentum: [0.3, -1.0, 0.6],
        };
        let e = diagonalize(&build_h3d(&p).unwrap()).unwrap();
        let expected = (1.0f64 + 0.09 + 0.36 + 2.25).sqrt();
        for (v, want) in e
            .values
            .iter()
            .zip([-expected, -expected, expected, expected])
        {
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut h = Matrix4c::identity();
        h[(0, 1)] = ONE;
        assert!(matches!(diagonalize(&h), Err(Error::Invalid(_))));
    }

    #[test]
    fn degenerate_cluster_ordered_by_spin_x() {
        let h = build_h1d(&DiracParams::one_d(1.0, 1.0, 0.0, 0.0, 0.0, 0.4)).unwrap();
        let eig = diagonalize(&h).unwrap();
        let sx: Vec<f64> = eig
            .vectors
            .iter()
            .map(|v| spin_expectation(v).unwrap()[0])
            .collect();
        assert!((sx[0] - 0.5).abs() < 1e-12 && (sx[1] + 0.5).abs() < 1e-12);
        assert!((sx[2] - 0.5).abs() < 1e-12 && (sx[3] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn propagate_identity_at_zero_and_stationary_phase() {
        let params = DiracParams::one_d(1.0, 1.0, 0.1, 0.05, 1.0, 0.8);
        let h = build_h1d(&params).unwrap();
        let eig = diagonalize(&h).unwrap();
        let v = eig.vectors[3];
        let same = propagate(&v, &h, 0.0).unwrap();
        assert!((same.0 - v.0).norm() < 1e-14);
        let t = 3.7;
        let later = propagate(&v, &h, t).unwrap();
        let expected = v.scale(Complex64::from_polar(1.0, -eig.values[3] * t));
        assert!((later.0 - expected.0).norm() < 1e-13);
    }

    #[test]
    fn spin_series_grid_validation() {
        let h = build_h1d(&DiracParams::one_d(1.0, 1.0, 0.1, 0.0, 1.0, 1.0)).unwrap();
        let s = Spinor4::basis(0);
        assert!(spin_series(&s, &h, &[]).is_err());
        assert!(spin_series(&s, &h, &[0.0, 1.0, 1.0]).is_err());
        let series = spin_series(&s, &h, &[0.0, 0.5, 1.0]).unwrap();
        for pops in &series.populations {
            assert!((pops.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
