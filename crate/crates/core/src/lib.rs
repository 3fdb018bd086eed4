//! Extended Dirac equation for a neutral particle with electric and magnetic
//! dipole moments in a constant electrostatic field, and its exact emulation
//! by a single trapped ion driven with Jaynes-Cummings, anti-Jaynes-Cummings
//! and carrier interactions.
//!
//! The crate has three layers that check each other:
//!
//! * [`dirac_core`]: closed-form spectrum, spin splitting, eigenspinors and
//!   the analytic spin precession.
//! * [`dirac_numeric`]: dense 4×4 Hamiltonians, exact diagonalization and
//!   propagation, used as the oracle for the closed forms.
//! * [`ion`]: the trapped-ion operators, parameter mapping, wavepacket
//!   preparation, dynamics and frequency extraction.
//!
//! [`units`] holds the physical constants and the conversion to the natural
//! units (ħ = 1) every other module works in.

pub mod dirac_core;
pub mod dirac_numeric;
pub mod error;
pub mod ion;
pub mod series;
pub mod units;

pub use dirac_core::{DiracParams, PositiveEnergySuperposition, Spectrum, Spinor4};
pub use error::{Error, Result};
pub use ion::{FockConfig, IonParams, QuantumState};
pub use series::{Channel, SpinTimeSeries};
