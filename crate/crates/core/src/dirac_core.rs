//! Closed-form physics of the extended Dirac equation for a neutral particle
//! carrying electric (EDM) and magnetic (MDM) dipole moments in a constant
//! electrostatic field.
//!
//! Everything here works in natural units with ħ = 1. In one dimension the
//! Hamiltonian only involves four energy scales:
//!
//! * `M = mc²` (rest energy)
//! * `K = c·p_x` (kinetic scale)
//! * `D = d_a·E_x` (EDM coupling)
//! * `G = (μ_a/c)·E_x` (MDM coupling)
//!
//! and the spectrum is `E_±^↑ = ±√(K² + G² + (M + D)²)`,
//! `E_±^↓ = ±√(K² + G² + (M − D)²)`.
//!
//! Spin operators use the standard representation,
//! `S_j = ½·diag(σ_j, σ_j)`, which is what `−(i/4) α⃗×α⃗` evaluates to; the
//! [`crate::dirac_numeric::DiracMatrixSet`] tests check the two agree.

use nalgebra::Vector4;
use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Tolerance on `‖ψ‖ − 1` accepted by operations that require a normalized state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Default bound on the small ratios for [`splitting_taylor`].
pub const DEFAULT_TAYLOR_THRESHOLD: f64 = 1e-2;

/// Physical parameters of the extended Dirac model (natural units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracParams {
    /// Rest energy mc².
    pub mass_energy: f64,
    /// Simulated speed of light.
    pub c_sim: f64,
    /// Electric dipole moment d_a.
    pub edm: f64,
    /// Magnetic dipole moment μ_a.
    pub mdm: f64,
    pub e_field: [f64; 3],
    pub momentum: [f64; 3],
}

impl DiracParams {
    /// Parameters of the one-dimensional model: field and momentum along x.
    pub fn one_d(mass_energy: f64, c_sim: f64, edm: f64, mdm: f64, e_x: f64, p_x: f64) -> Self {
        DiracParams {
            mass_energy,
            c_sim,
            edm,
            mdm,
            e_field: [e_x, 0.0, 0.0],
            momentum: [p_x, 0.0, 0.0],
        }
    }

    pub fn with_momentum_x(mut self, p_x: f64) -> Self {
        self.momentum = [p_x, 0.0, 0.0];
        self
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("mass_energy", self.mass_energy)?;
        ensure_finite("c_sim", self.c_sim)?;
        ensure_finite("edm", self.edm)?;
        ensure_finite("mdm", self.mdm)?;
        for (j, (e, p)) in self.e_field.iter().zip(&self.momentum).enumerate() {
            ensure_finite(&format!("e_field[{j}]"), *e)?;
            ensure_finite(&format!("momentum[{j}]"), *p)?;
        }
        if self.mass_energy < 0.0 {
            return Err(Error::Invalid(format!(
                "mass_energy must be non-negative, got {}",
                self.mass_energy
            )));
        }
        if self.c_sim <= 0.0 {
            return Err(Error::Invalid(format!(
                "c_sim must be positive, got {}",
                self.c_sim
            )));
        }
        Ok(())
    }

    /// Validates and additionally requires the y/z components of field and
    /// momentum to vanish.
    pub fn validate_1d(&self) -> Result<()> {
        self.validate()?;
        if self.e_field[1] != 0.0 || self.e_field[2] != 0.0 {
            return Err(Error::Invalid(format!(
                "1D model requires E_y = E_z = 0, got {:?}",
                self.e_field
            )));
        }
        if self.momentum[1] != 0.0 || self.momentum[2] != 0.0 {
            return Err(Error::Invalid(format!(
                "1D model requires p_y = p_z = 0, got {:?}",
                self.momentum
            )));
        }
        Ok(())
    }

    pub fn kinetic_x(&self) -> f64 {
        self.c_sim * self.momentum[0]
    }

    /// d_a·E_x
    pub fn edm_coupling(&self) -> f64 {
        self.edm * self.e_field[0]
    }

    /// (μ_a/c)·E_x
    pub fn mdm_coupling(&self) -> f64 {
        self.mdm * self.e_field[0] / self.c_sim
    }
}

/// Four complex amplitudes over the internal levels (a, b, c, d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4(pub Vector4<Complex64>);

impl Spinor4 {
    pub fn new(components: [Complex64; 4]) -> Self {
        Spinor4(Vector4::from(components))
    }

    pub fn from_real(components: [f64; 4]) -> Self {
        Spinor4(Vector4::from(components.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn basis(level: usize) -> Self {
        let mut v = Vector4::zeros();
        v[level] = Complex64::new(1.0, 0.0);
        Spinor4(v)
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Invalid(format!(
                "cannot normalize spinor with norm {n}"
            )));
        }
        self.0 /= Complex64::new(n, 0.0);
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Spinor4) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn populations(&self) -> [f64; 4] {
        self.components().map(|u| u.norm_sqr())
    }

    pub fn scale(&self, factor: Complex64) -> Spinor4 {
        Spinor4(self.0 * factor)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Invalid(format!(
                "spinor must be normalized, norm is {n}"
            )));
        }
        Ok(())
    }
}

impl std::ops::Add for Spinor4 {
    type Output = Spinor4;
    fn add(self, rhs: Spinor4) -> Spinor4 {
        Spinor4(self.0 + rhs.0)
    }
}

/// The four energies of the 1D model and the spin splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub e_plus_up: f64,
    pub e_plus_down: f64,
    pub e_minus_up: f64,
    pub e_minus_down: f64,
    pub splitting: f64,
}

impl Spectrum {
    /// Energies in ascending order.
    pub fn sorted(&self) -> [f64; 4] {
        let mut e = [
            self.e_minus_up,
            self.e_minus_down,
            self.e_plus_down,
            self.e_plus_up,
        ];
        e.sort_by(f64::total_cmp);
        e
    }
}

/// Energies of the free particle (no field), `±√(c²|p⃗|² + m²c⁴)`, each
/// doubly degenerate.
pub fn free_energies(params: &DiracParams) -> Result<Spectrum> {
    params.validate()?;
    if params.e_field.iter().any(|&e| e != 0.0) {
        return Err(Error::Invalid(format!(
            "free_energies requires a vanishing field, got {:?}",
            params.e_field
        )));
    }
    let p2: f64 = params.momentum.iter().map(|p| p * p).sum();
    let kinetic = params.c_sim * p2.sqrt();
    let e = kinetic.hypot(params.mass_energy);
    Ok(Spectrum {
        e_plus_up: e,
        e_plus_down: e,
        e_minus_up: -e,
        e_minus_down: -e,
        splitting: 0.0,
    })
}

fn sector_energies(params: &DiracParams) -> (f64, f64) {
    let k = params.kinetic_x();
    let g = params.mdm_coupling();
    let m = params.mass_energy;
    let d = params.edm_coupling();
    let transverse = k.hypot(g);
    (transverse.hypot(m + d), transverse.hypot(m - d))
}

/// Spin splitting from the two sector energies, written as
/// `4·mc²·d_aE_x / (E_+^↑ + E_+^↓)` so that it stays accurate when the
/// splitting is many orders of magnitude below mc².
fn splitting_from(params: &DiracParams, e_up: f64, e_down: f64) -> f64 {
    let sum = e_up + e_down;
    if sum == 0.0 {
        return 0.0;
    }
    4.0 * params.mass_energy * params.edm_coupling() / sum
}

/// Spectrum of the 1D Hamiltonian with EDM and MDM couplings.
pub fn edm_spectrum(params: &DiracParams) -> Result<Spectrum> {
    params.validate_1d()?;
    let (up, down) = sector_energies(params);
    Ok(Spectrum {
        e_plus_up: up,
        e_plus_down: down,
        e_minus_up: -up,
        e_minus_down: -down,
        splitting: splitting_from(params, up, down),
    })
}

/// `E_+^↑ − E_+^↓`.
pub fn splitting_exact(params: &DiracParams) -> Result<f64> {
    params.validate_1d()?;
    let (up, down) = sector_energies(params);
    Ok(splitting_from(params, up, down))
}

/// Second-order expansion `2·d_aE_x − (G²/M²)·d_aE_x` of the splitting,
/// valid when d_aE_x, (μ_a/c)E_x and c·p_x are all small compared with mc².
///
/// Each of the three ratios to mc² must be at most `threshold`; the error
/// names the first one that is not.
pub fn splitting_taylor(params: &DiracParams, threshold: f64) -> Result<f64> {
    params.validate_1d()?;
    let m = params.mass_energy;
    if m <= 0.0 {
        return Err(Error::Domain("expansion requires mc² > 0".into()));
    }
    let d = params.edm_coupling();
    let g = params.mdm_coupling();
    let ratios = [
        ("d_a·E_x / mc²", d / m),
        ("(μ_a/c)·E_x / mc²", g / m),
        ("c·p_x / mc²", params.kinetic_x() / m),
    ];
    for (name, ratio) in ratios {
        if ratio.abs() > threshold {
            return Err(Error::Domain(format!(
                "{name} = {ratio:e} exceeds the expansion threshold {threshold:e}"
            )));
        }
    }
    Ok(2.0 * d - (g * g) / (m * m) * d)
}

/// λ = ((μ_a/c)E_x / mc²)²
pub fn lambda_ratio(params: &DiracParams) -> Result<f64> {
    params.validate_1d()?;
    if params.mass_energy <= 0.0 {
        return Err(Error::Domain("λ requires mc² > 0".into()));
    }
    let r = params.mdm_coupling() / params.mass_energy;
    Ok(r * r)
}

/// Angular precession frequency ω = (E_+^↑ − E_+^↓)/ħ with ħ = 1.
pub fn precession_frequency(params: &DiracParams) -> Result<f64> {
    splitting_exact(params)
}

/// ⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩ for a normalized spinor.
pub fn spin_expectation(spinor: &Spinor4) -> Result<[f64; 3]> {
    spinor.require_normalized()?;
    Ok(spin_matrix_elements(spinor, spinor).map(|z| z.re))
}

/// ⟨bra|S_j|ket⟩ for j = x, y, z.
pub fn spin_matrix_elements(bra: &Spinor4, ket: &Spinor4) -> [Complex64; 3] {
    let [b0, b1, b2, b3] = bra.components().map(|z| z.conj());
    let [k0, k1, k2, k3] = ket.components();
    let i = Complex64::i();
    let half = 0.5;
    [
        (b0 * k1 + b1 * k0 + b2 * k3 + b3 * k2) * half,
        (-i * b0 * k1 + i * b1 * k0 - i * b2 * k3 + i * b3 * k2) * half,
        (b0 * k0 - b1 * k1 + b2 * k2 - b3 * k3) * half,
    ]
}

/// An eigenspinor together with its energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub spinor: Spinor4,
    pub energy: f64,
}

/// The four closed-form eigenspinors |±↑⟩, |±↓⟩ of the 1D model with μ_a = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenspinors {
    pub plus_up: EigenPair,
    pub plus_down: EigenPair,
    pub minus_up: EigenPair,
    pub minus_down: EigenPair,
}

impl Eigenspinors {
    pub fn all(&self) -> [EigenPair; 4] {
        [self.plus_up, self.plus_down, self.minus_up, self.minus_down]
    }
}

/// Roots of `v² − 2wv − 1 = 0`, returned as (w + √(1+w²), w − √(1+w²)).
///
/// The product of the roots is −1; the smaller one is obtained from it to
/// avoid cancellation when |w| is large.
fn v_roots(w: f64) -> (f64, f64) {
    let r = 1f64.hypot(w);
    if w >= 0.0 {
        let big = w + r;
        (big, -1.0 / big)
    } else {
        let big = w - r;
        (-1.0 / big, big)
    }
}

/// Builds the (positive, negative) energy pair of one S_x sector.
///
/// `sign = +1` gives the ↑ sector `(v, v, 1, 1)/N`, `sign = −1` the ↓
/// sector `(v, −v, −1, 1)/N`.
fn sector_pair(
    rest: f64,
    kinetic: f64,
    transverse_energy: f64,
    sign: f64,
) -> (EigenPair, EigenPair) {
    let w = rest / kinetic;
    let (v_plus, v_minus) = v_roots(w);
    // v_+ carries energy c·p_x·√(1+w²), which is positive only for p_x > 0.
    let (v_pos, v_neg) = if kinetic > 0.0 {
        (v_plus, v_minus)
    } else {
        (v_minus, v_plus)
    };
    let build = |v: f64| {
        let norm = (2.0 + 2.0 * v * v).sqrt();
        Spinor4::from_real([v / norm, sign * v / norm, sign / norm, 1.0 / norm])
    };
    (
        EigenPair {
            spinor: build(v_pos),
            energy: transverse_energy,
        },
        EigenPair {
            spinor: build(v_neg),
            energy: -transverse_energy,
        },
    )
}

/// Closed-form eigenspinors for μ_a = 0 and p_x ≠ 0.
pub fn eigenspinors(params: &DiracParams) -> Result<Eigenspinors> {
    params.validate_1d()?;
    if params.mdm_coupling() != 0.0 {
        return Err(Error::Domain(
            "closed-form eigenspinors require (μ_a/c)·E_x = 0; use dirac_numeric::diagonalize"
                .into(),
        ));
    }
    let kinetic = params.kinetic_x();
    if kinetic == 0.0 {
        return Err(Error::Domain(
            "closed-form eigenspinors require p_x ≠ 0; use dirac_numeric::diagonalize".into(),
        ));
    }
    let m = params.mass_energy;
    let d = params.edm_coupling();
    let (up, down) = sector_energies(params);
    let (plus_up, minus_up) = sector_pair(m + d, kinetic, up, 1.0);
    let (plus_down, minus_down) = sector_pair(m - d, kinetic, down, -1.0);
    Ok(Eigenspinors {
        plus_up,
        plus_down,
        minus_up,
        minus_down,
    })
}

/// Superposition `b_up|+↑⟩ + b_down|+↓⟩` of the two positive-energy states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositiveEnergySuperposition {
    pub b_up: Complex64,
    pub b_down: Complex64,
    pub params: DiracParams,
}

impl PositiveEnergySuperposition {
    pub fn new(b_up: Complex64, b_down: Complex64, params: DiracParams) -> Result<Self> {
        let weight = b_up.norm_sqr() + b_down.norm_sqr();
        if (weight - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!(
                "|b_up|² + |b_down|² must be 1, got {weight}"
            )));
        }
        params.validate_1d()?;
        Ok(PositiveEnergySuperposition {
            b_up,
            b_down,
            params,
        })
    }

    /// Equal-weight real superposition.
    pub fn balanced(params: DiracParams) -> Result<Self> {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(h, h, params)
    }
}

/// Precomputed closed-form precession of a positive-energy superposition.
///
/// The spin follows `⟨S_j⟩(t) = s_j + 2·Re[c_j·e^{iωt}]` with static part
/// `s_j = |b_↑|²⟨↑|S_j|↑⟩ + |b_↓|²⟨↓|S_j|↓⟩` and interference coefficient
/// `c_j = b_↑*·b_↓·⟨↑|S_j|↓⟩`; the matrix elements are evaluated from the
/// eigenspinors.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticPrecession {
    state: PositiveEnergySuperposition,
    up: EigenPair,
    down: EigenPair,
    static_spin: [f64; 3],
    interference: [Complex64; 3],
}

impl AnalyticPrecession {
    pub fn new(state: PositiveEnergySuperposition) -> Result<Self> {
        let spinors = eigenspinors(&state.params)?;
        let up = spinors.plus_up;
        let down = spinors.plus_down;
        let s_uu = spin_matrix_elements(&up.spinor, &up.spinor);
        let s_dd = spin_matrix_elements(&down.spinor, &down.spinor);
        let s_ud = spin_matrix_elements(&up.spinor, &down.spinor);
        let w_up = state.b_up.norm_sqr();
        let w_down = state.b_down.norm_sqr();
        let cross = state.b_up.conj() * state.b_down;
        let static_spin = std::array::from_fn(|j| w_up * s_uu[j].re + w_down * s_dd[j].re);
        let interference = s_ud.map(|s| cross * s);
        Ok(AnalyticPrecession {
            state,
            up,
            down,
            static_spin,
            interference,
        })
    }

    pub fn omega(&self) -> f64 {
        splitting_from(&self.state.params, self.up.energy, self.down.energy)
    }

    pub fn static_spin(&self) -> [f64; 3] {
        self.static_spin
    }

    pub fn interference(&self) -> [Complex64; 3] {
        self.interference
    }

    pub fn spinor_at(&self, t: f64) -> Spinor4 {
        let phase = |e: f64| Complex64::from_polar(1.0, -e * t);
        self.up
            .spinor
            .scale(self.state.b_up * phase(self.up.energy))
            + self
                .down
                .spinor
                .scale(self.state.b_down * phase(self.down.energy))
    }

    /// Spin vector from the static + interference decomposition.
    pub fn spin_at(&self, t: f64) -> [f64; 3] {
        let rot = Complex64::from_polar(1.0, self.omega() * t);
        std::array::from_fn(|j| self.static_spin[j] + 2.0 * (self.interference[j] * rot).re)
    }
}

/// Evolves a positive-energy superposition to time `t` and returns the
/// spinor together with its spin expectation.
pub fn evolve_analytic(state: &PositiveEnergySuperposition, t: f64) -> Result<(Spinor4, [f64; 3])> {
    ensure_finite("t", t)?;
    let precession = AnalyticPrecession::new(*state)?;
    let spinor = precession.spinor_at(t);
    let spin = spin_expectation(&spinor)?;
    Ok((spinor, spin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_example() -> DiracParams {
        // mc² = 1, c = 1, p_x = 1, d_a·E_x = 0.1, μ_a = 0
        DiracParams::one_d(1.0, 1.0, 0.1, 0.0, 1.0, 1.0)
    }

    #[test]
    fn free_energies_examples() {
        let s = free_energies(&DiracParams::one_d(1.0, 1.0, 0.3, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.sorted(), [-1.0, -1.0, 1.0, 1.0]);
        assert_eq!(s.splitting, 0.0);

        let s = free_energies(&DiracParams::one_d(0.0, 1.0, 0.0, 0.0, 0.0, 2.0)).unwrap();
        assert_eq!(s.e_plus_up, 2.0);

        let s = free_energies(&DiracParams::one_d(4.0, 1.0, 0.0, 0.0, 0.0, 3.0)).unwrap();
        assert_eq!(s.e_plus_down, 5.0);
        assert_eq!(s.e_minus_up, -5.0);
    }

    #[test]
    fn free_energies_rejects_field() {
        let err = free_energies(&first_example()).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn spectrum_first_example() {
        let s = edm_spectrum(&first_example()).unwrap();
        assert!((s.e_plus_up - 2.21f64.sqrt()).abs() < 1e-15);
        assert!((s.e_plus_down - 1.81f64.sqrt()).abs() < 1e-15);
        assert!((s.e_plus_up - 1.486607).abs() < 1e-6);
        assert!((s.e_plus_down - 1.345362).abs() < 1e-6);
        assert!((s.splitting - 0.141245).abs() < 1e-6);
        assert!((s.splitting - (s.e_plus_up - s.e_plus_down)).abs() < 1e-15);
        assert_eq!(s.e_minus_up, -s.e_plus_up);
        assert_eq!(s.e_minus_down, -s.e_plus_down);
    }

    #[test]
    fn degeneracy_limits() {
        // d_a = 0 with MDM and field present
        let p = DiracParams::one_d(1.0, 1.0, 0.0, 0.4, 2.0, 0.7);
        assert_eq!(splitting_exact(&p).unwrap(), 0.0);
        // massless
        let p = DiracParams::one_d(0.0, 1.0, 0.2, 0.1, 1.5, 0.7);
        assert_eq!(splitting_exact(&p).unwrap(), 0.0);
        // no field
        let p = DiracParams::one_d(1.0, 1.0, 0.2, 0.1, 0.0, 0.7);
        assert_eq!(splitting_exact(&p).unwrap(), 0.0);
    }

    #[test]
    fn splitting_is_odd_in_edm() {
        let p = DiracParams::one_d(1.3, 0.8, 0.17, 0.05, 0.9, 0.4);
        let mut q = p;
        q.edm = -p.edm;
        assert_eq!(splitting_exact(&q).unwrap(), -splitting_exact(&p).unwrap());
    }

    #[test]
    fn rejects_transverse_components() {
        let mut p = first_example();
        p.momentum[2] = 0.1;
        assert!(matches!(edm_spectrum(&p), Err(Error::Invalid(_))));
        let mut p = first_example();
        p.c_sim = 0.0;
        assert!(matches!(edm_spectrum(&p), Err(Error::Invalid(_))));
        let mut p = first_example();
        p.edm = f64::NAN;
        assert!(matches!(edm_spectrum(&p), Err(Error::Invalid(_))));
    }

    #[test]
    fn taylor_examples() {
        let p = DiracParams::one_d(1.0, 1.0, 1e-4, 0.0, 1.0, 0.0);
        assert_eq!(
            splitting_taylor(&p, DEFAULT_TAYLOR_THRESHOLD).unwrap(),
            2e-4
        );

        // d_a E_x = 1e-4, (μ_a/c) E_x = 1e-3
        let p = DiracParams::one_d(1.0, 1.0, 1e-4, 1e-3, 1.0, 0.0);
        let taylor = splitting_taylor(&p, DEFAULT_TAYLOR_THRESHOLD).unwrap();
        assert!((taylor - 1.999999e-4).abs() < 1e-18);
        let exact = splitting_exact(&p).unwrap();
        assert!(((exact - taylor) / exact).abs() < 1e-10);

        let p = DiracParams::one_d(1.0, 1.0, 0.0, 1e-3, 1.0, 0.0);
        assert_eq!(splitting_taylor(&p, DEFAULT_TAYLOR_THRESHOLD).unwrap(), 0.0);
    }

    #[test]
    fn taylor_domain_errors_name_the_ratio() {
        let p = DiracParams::one_d(1.0, 1.0, 0.5, 0.0, 1.0, 0.0);
        match splitting_taylor(&p, DEFAULT_TAYLOR_THRESHOLD) {
            Err(Error::Domain(msg)) => assert!(msg.contains("d_a·E_x"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let p = DiracParams::one_d(1.0, 1.0, 1e-4, 0.0, 1.0, 0.5);
        match splitting_taylor(&p, DEFAULT_TAYLOR_THRESHOLD) {
            Err(Error::Domain(msg)) => assert!(msg.contains("c·p_x"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let p = DiracParams::one_d(0.0, 1.0, 1e-4, 0.0, 1.0, 0.0);
        assert!(matches!(splitting_taylor(&p, 1e-2), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_examples() {
        let p = DiracParams::one_d(2.0, 1.0, 0.0, 2.0, 1.0, 0.0);
        assert_eq!(lambda_ratio(&p).unwrap(), 1.0);
        let p = DiracParams::one_d(1.0, 1.0, 0.0, 0.01, 1.0, 0.0);
        assert!((lambda_ratio(&p).unwrap() - 1e-4).abs() < 1e-18);
        let p = DiracParams::one_d(0.0, 1.0, 0.0, 0.01, 1.0, 0.0);
        assert!(matches!(lambda_ratio(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn spin_of_basis_state() {
        let s = spin_expectation(&Spinor4::basis(0)).unwrap();
        assert_eq!(s, [0.0, 0.0, 0.5]);
        let bad = Spinor4::from_real([1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(spin_expectation(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn eigenspinor_spins() {
        for p_x in [1.0, -0.6] {
            let e = eigenspinors(&first_example().with_momentum_x(p_x)).unwrap();
            for pair in [e.plus_up, e.minus_up] {
                let s = spin_expectation(&pair.spinor).unwrap();
                assert!((s[0] - 0.5).abs() < 1e-12 && s[1].abs() < 1e-12 && s[2].abs() < 1e-12);
            }
            for pair in [e.plus_down, e.minus_down] {
                let s = spin_expectation(&pair.spinor).unwrap();
                assert!((s[0] + 0.5).abs() < 1e-12 && s[1].abs() < 1e-12 && s[2].abs() < 1e-12);
            }
            assert!(e.plus_up.energy > 0.0 && e.minus_down.energy < 0.0);
        }
    }

    #[test]
    fn massless_free_spinors_are_balanced() {
        let e = eigenspinors(&DiracParams::one_d(0.0, 1.0, 0.0, 0.0, 0.0, 1.0)).unwrap();
        for pair in e.all() {
            for p in pair.spinor.populations() {
                assert!((p - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn eigenspinor_domain_errors() {
        let p = first_example().with_momentum_x(0.0);
        assert!(matches!(eigenspinors(&p), Err(Error::Domain(_))));
        let mut p = first_example();
        p.mdm = 0.2;
        assert!(matches!(eigenspinors(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn precession_examples() {
        let p = first_example();
        assert!((precession_frequency(&p).unwrap() - 0.141245).abs() < 1e-6);
        let mut q = p;
        q.edm = 0.0;
        assert_eq!(precession_frequency(&q).unwrap(), 0.0);
    }

    #[test]
    fn stationary_up_state() {
        let state = PositiveEnergySuperposition::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            first_example(),
        )
        .unwrap();
        for t in [0.0, 1.7, 55.0] {
            let (_, s) = evolve_analytic(&state, t).unwrap();
            assert!((s[0] - 0.5).abs() < 1e-12 && s[1].abs() < 1e-12 && s[2].abs() < 1e-12);
        }
    }

    #[test]
    fn spin_routes_agree_and_period_closes() {
        let state = PositiveEnergySuperposition::new(
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            first_example(),
        )
        .unwrap();
        let pr = AnalyticPrecession::new(state).unwrap();
        let period = 2.0 * std::f64::consts::PI / pr.omega();
        let s0 = pr.spin_at(0.0);
        let s1 = pr.spin_at(period);
        for j in 0..3 {
            assert!((s0[j] - s1[j]).abs() < 1e-10);
        }
        for k in 0..50 {
            let t = 0.37 * k as f64;
            let direct = spin_expectation(&pr.spinor_at(t)).unwrap();
            let decomposed = pr.spin_at(t);
            for j in 0..3 {
                assert!((direct[j] - decomposed[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn superposition_weights_are_checked() {
        let r = PositiveEnergySuperposition::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            first_example(),
        );
        assert!(matches!(r, Err(Error::Invalid(_))));
    }
}
