//! Optics of superradiant multisubband plasmons in highly doped quantum
//! wells coupled to free-space radiation.
//!
//! The crate goes from a microscopic well description to the coupled
//! light-matter observables in five steps:
//!
//! 1. [`wellbands`] - bound subbands of a 1D conduction-band profile, Fermi
//!    filling, intersubband transition currents;
//! 2. [`plasmons`] - dipole-dipole coupling and Bogoliubov diagonalization
//!    into multisubband plasmon modes, bright-mode radiative rate;
//! 3. [`coupling`] - the angle/wavevector radiative kernel, its frequency
//!    shift, the critical angle, and a Kramers-Kronig quadrature check;
//! 4. [`scattering`] - the input-output port matrix and the optical
//!    coefficients t, r, alpha in four model variants;
//! 5. [`thermal`] and [`eigenstates`] - incandescent emission through the
//!    same matrix, and the coupled-state dispersions on both sides of the
//!    light cone.

pub mod constants;
pub mod coupling;
pub mod eigenstates;
pub mod error;
pub mod plasmons;
pub mod scattering;
pub mod thermal;
pub mod tridiag;
pub mod wellbands;

pub use coupling::CouplingParams;
pub use error::{Error, Result};
pub use plasmons::{CouplingMatrix, PlasmonModeSet};
pub use scattering::{ModelVariant, ScatterProblem, SpectralTable};
pub use thermal::{EmissionSpectrum, ThermalScenario};
pub use wellbands::{BoundStates, SubbandSet, TransitionSet, WellProfile};
