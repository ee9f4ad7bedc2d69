//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// No eigenstate below the continuum edge of the supplied profile.
    #[error("no bound state below the barrier top")]
    NoBoundState,

    /// Richardson estimate of the ground-state discretization error is above
    /// the contract limit; the caller must supply a finer grid.
    #[error("grid too coarse: estimated E1 discretization error {est_mev:.4} meV exceeds {limit_mev} meV")]
    GridTooCoarse { est_mev: f64, limit_mev: f64 },

    /// A squared Bogoliubov eigenfrequency came out non-positive, which no
    /// physical dipole-dipole matrix can produce.
    #[error("non-positive Bogoliubov spectrum: omega^2 = {value_mev2:.6e} meV^2")]
    NonPositiveSpectrum { value_mev2: f64 },

    /// Propagation angle at or beyond grazing, where the radiative kernel
    /// diverges.
    #[error("angle {theta_deg} deg outside [0, 90)")]
    AngleOutOfRange { theta_deg: f64 },

    /// Principal-value quadrature failed its two-level refinement check.
    #[error("quadrature not converged: refinement delta {delta:.3e} exceeds tolerance {tol:.3e}")]
    QuadratureNotConverged { delta: f64, tol: f64 },

    /// A spectrum never drops below half of its peak on one side.
    #[error("half maximum not bracketed on the {side} side of the peak")]
    HalfMaxNotBracketed { side: &'static str },

    /// Evaluation exactly on the light cone Omega = ck/sqrt(eps_s).
    #[error("evaluation exactly on the light cone")]
    LightConePoint,

    /// Input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
