//! Operator-level checks that the ion Hamiltonians reproduce the Dirac
//! Hamiltonian term by term under the parameter mapping.

use std::fmt;

use num_complex::Complex64;

use super::fock::{momentum_operator, FockConfig};
use super::interactions::{assemble_h1d_ion, embed_internal, kron_internal, OperatorMatrix};
use super::levels::{pauli_pair, Axis, LevelPair};
use super::{map_params, IonParams};
use crate::dirac_core::DiracParams;
use crate::dirac_numeric::{build_h1d, build_h3d, DiracMatrixSet, Matrix4c};
use crate::error::{ensure_finite, Result};

/// Absolute elementwise tolerance for the identities, for order-one parameters.
pub const MAPPING_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermFamily {
    Momentum,
    Mass,
    Edm,
    Mdm,
    /// Whole Hamiltonian at the supplied field and momentum.
    Total,
}

impl fmt::Display for TermFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TermFamily::Momentum => "momentum",
            TermFamily::Mass => "mass",
            TermFamily::Edm => "edm",
            TermFamily::Mdm => "mdm",
            TermFamily::Total => "total",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingEntry {
    pub family: TermFamily,
    pub axis: Option<Axis>,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingReport {
    pub entries: Vec<MappingEntry>,
    pub tolerance: f64,
}

impl MappingReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.max_deviation <= self.tolerance)
    }

    /// Human-readable names of the failing terms.
    pub fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.max_deviation.is_nan() || e.max_deviation > self.tolerance)
            .map(|e| match e.axis {
                Some(axis) => format!(
                    "{} term, {:?} axis: deviation {:e}",
                    e.family, axis, e.max_deviation
                ),
                None => format!("{} term: deviation {:e}", e.family, e.max_deviation),
            })
            .collect()
    }

    pub fn max_deviation(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.max_deviation)
            .fold(0.0, f64::max)
    }
}

fn deviation(a: &Matrix4c, b: &Matrix4c) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Ion-side operator for each term family and axis, per unit field or
/// momentum component.
fn ion_term(ion: &IonParams, family: TermFamily, axis: Axis) -> Matrix4c {
    use LevelPair as P;
    let sx = |p| pauli_pair(p, Axis::X);
    let sy = |p| pauli_pair(p, Axis::Y);
    let sz = |p| pauli_pair(p, Axis::Z);
    match family {
        TermFamily::Momentum => {
            let op = match axis {
                Axis::X => sx(P::AD) + sx(P::BC),
                Axis::Y => sy(P::AD) - sy(P::BC),
                Axis::Z => sx(P::AC) - sx(P::BD),
            };
            op * c(ion.emulated_c())
        }
        TermFamily::Mass => (sz(P::AD) + sz(P::BC)) * c(2.0 * ion.detuning),
        TermFamily::Edm => {
            (pauli_pair(P::AB, axis) - pauli_pair(P::CD, axis)) * c(2.0 * ion.omega1)
        }
        TermFamily::Mdm => {
            let op = match axis {
                Axis::X => -sy(P::AD) - sy(P::BC),
                // iβα_y evaluates to σ_x^ad − σ_x^bc in the standard representation.
                Axis::Y => sx(P::AD) - sx(P::BC),
                Axis::Z => sy(P::BD) - sy(P::AC),
            };
            op * c(2.0 * ion.omega2)
        }
        TermFamily::Total => unreachable!("total is not a single term"),
    }
}

/// Dirac-side operator for each term family and axis, per unit field or
/// momentum component.
fn dirac_term(
    set: &DiracMatrixSet,
    params: &DiracParams,
    family: TermFamily,
    axis: Axis,
) -> Matrix4c {
    let j = axis.index();
    match family {
        TermFamily::Momentum => set.alpha[j] * c(params.c_sim),
        TermFamily::Mass => set.beta * c(params.mass_energy),
        TermFamily::Edm => set.beta * set.spin[j] * c(2.0 * params.edm),
        TermFamily::Mdm => set.beta * set.alpha[j] * Complex64::new(0.0, params.mdm / params.c_sim),
        TermFamily::Total => unreachable!("total is not a single term"),
    }
}

/// Checks the three-dimensional term mappings on the internal space.
///
/// Each family/axis entry compares the operators per unit momentum or
/// field component (the scalar factors multiply both sides identically);
/// the final `Total` entry compares the full Hamiltonian at `field` and
/// `momentum` with [`build_h3d`]. Field components scale the carrier Rabi
/// frequencies, Ω⁽ⁱ⁾_j = Ω⁽ⁱ⁾·E_j.
pub fn verify_mapping_3d(
    ion: &IonParams,
    field: [f64; 3],
    momentum: [f64; 3],
) -> Result<MappingReport> {
    for j in 0..3 {
        ensure_finite("field", field[j])?;
        ensure_finite("momentum", momentum[j])?;
    }
    let base = map_params(ion)?;
    let params = DiracParams {
        e_field: field,
        momentum,
        ..base
    };
    let set = DiracMatrixSet::standard();

    let mut entries = Vec::new();
    let mut total = Matrix4c::zeros();
    for family in [
        TermFamily::Momentum,
        TermFamily::Mass,
        TermFamily::Edm,
        TermFamily::Mdm,
    ] {
        let axes: &[Axis] = if family == TermFamily::Mass {
            &[Axis::X]
        } else {
            &Axis::ALL
        };
        for &axis in axes {
            let ion_op = ion_term(ion, family, axis);
            let dirac_op = dirac_term(&set, &params, family, axis);
            entries.push(MappingEntry {
                family,
                axis: (family != TermFamily::Mass).then_some(axis),
                max_deviation: deviation(&ion_op, &dirac_op),
            });
            let scalar = match family {
                TermFamily::Momentum => momentum[axis.index()],
                TermFamily::Mass => 1.0,
                _ => field[axis.index()],
            };
            total += ion_op * c(scalar);
        }
    }
    entries.push(MappingEntry {
        family: TermFamily::Total,
        axis: None,
        max_deviation: deviation(&total, &build_h3d(&params)?),
    });
    Ok(MappingReport {
        entries,
        tolerance: MAPPING_TOLERANCE,
    })
}

/// The 1D Dirac Hamiltonian with p_x replaced by the truncated p̂:
/// `c α_x ⊗ p̂ + H_1D(p_x = 0) ⊗ 1`.
pub fn dirac_operator_h1d(params: &DiracParams, cfg: &FockConfig) -> Result<OperatorMatrix> {
    cfg.validate()?;
    let at_rest = build_h1d(&params.with_momentum_x(0.0))?;
    let alpha_x = DiracMatrixSet::standard().alpha[0] * c(params.c_sim);
    Ok(kron_internal(&alpha_x, &momentum_operator(cfg)) + embed_internal(&at_rest, cfg.n_max))
}

/// Largest elementwise difference between the assembled ion Hamiltonian
/// and the Dirac Hamiltonian it emulates.
pub fn operator_identity_1d(ion: &IonParams, cfg: &FockConfig) -> Result<f64> {
    let ion_h = assemble_h1d_ion(ion, cfg)?;
    let dirac_h = dirac_operator_h1d(&map_params(ion)?, cfg)?;
    Ok((ion_h - dirac_h)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
