//! Incandescent emission of the bright plasmon driven by thermal
//! fluctuations of the electronic and photonic baths, routed through the
//! input-output matrix so that Kirchhoff's law emerges from unitarity rather
//! than being inserted by hand.

use serde::{Deserialize, Serialize};

pub use crate::constants::bose_occupancy;
use crate::error::{Error, Result};
use crate::scattering::{build_u, ModelVariant, ScatterProblem};

/// One emission calculation: bath temperatures, the scattering problem in
/// absolute units (meV), the model variant, and the frequency grid (meV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThermalScenario {
    pub t_el_k: f64,
    pub t_ph_k: f64,
    pub problem: ScatterProblem,
    pub variant: ModelVariant,
    pub omega_grid_mev: Vec<f64>,
}

/// Spectral photon occupancy leaving one photonic port, with the Planck
/// references and the absorptivity that the Kirchhoff coefficient must
/// reproduce.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmissionSpectrum {
    pub omega_mev: Vec<f64>,
    pub photons_out: Vec<f64>,
    /// hbar omega * photons_out, in meV per unit angular-frequency measure.
    pub power_density: Vec<f64>,
    pub planck_el: Vec<f64>,
    pub planck_ph: Vec<f64>,
    pub alpha_used: Vec<f64>,
}

/// Output occupancy of the first photonic port:
/// n_out(w) = sum_{j in photon ports} |U_1j|^2 n_B(w, T_ph) + |U_1e|^2 n_B(w, T_el),
/// built from row sums of |U|^2. The electron-port coefficient is compared
/// against the independently computed absorptivity in `alpha_used`.
pub fn emitted_spectrum(s: &ThermalScenario) -> Result<EmissionSpectrum> {
    if !(s.t_el_k >= 0.0) || !(s.t_ph_k >= 0.0) {
        return Err(Error::InvalidInput("temperatures must be >= 0".into()));
    }
    if !matches!(s.variant, ModelVariant::Full | ModelVariant::Mirror) {
        return Err(Error::InvalidInput(
            "emission is defined for the full and mirror variants".into(),
        ));
    }
    let n = s.omega_grid_mev.len();
    let mut photons_out = Vec::with_capacity(n);
    let mut power = Vec::with_capacity(n);
    let mut planck_el = Vec::with_capacity(n);
    let mut planck_ph = Vec::with_capacity(n);
    let mut alpha_used = Vec::with_capacity(n);
    for &w in &s.omega_grid_mev {
        if !(w > 0.0) {
            return Err(Error::InvalidInput("omega grid must be positive".into()));
        }
        let u = build_u(&s.problem, w, s.variant)?;
        let ports = u.ports;
        let mut photon_coef = 0.0;
        for j in 0..ports - 1 {
            photon_coef += u.get(0, j).norm_sqr();
        }
        let electron_coef = u.get(0, ports - 1).norm_sqr();
        let n_el = bose_occupancy(w, s.t_el_k);
        let n_ph = bose_occupancy(w, s.t_ph_k);
        let out = photon_coef * n_ph + electron_coef * n_el;
        photons_out.push(out);
        power.push(w * out);
        planck_el.push(n_el);
        planck_ph.push(n_ph);
        alpha_used.push(absorptivity(&s.problem, w, s.variant));
    }
    Ok(EmissionSpectrum {
        omega_mev: s.omega_grid_mev.clone(),
        photons_out,
        power_density: power,
        planck_el,
        planck_ph,
        alpha_used,
    })
}

/// Closed-form absorptivity (independent of the |U|^2 route above).
fn absorptivity(prob: &ScatterProblem, omega: f64, variant: ModelVariant) -> f64 {
    let x = match variant {
        ModelVariant::Rwa | ModelVariant::MarkovRwa => 1.0,
        _ => 2.0 * prob.omega0 / (prob.omega0 + omega),
    };
    let big = match variant {
        ModelVariant::MarkovRwa => prob.gamma_res,
        _ => prob.gamma_res * omega / prob.omega0,
    };
    let d2 = (omega - prob.omega0).powi(2) + x * x * (prob.gamma_nr + big).powi(2) / 4.0;
    match variant {
        ModelVariant::Mirror => x * x * prob.gamma_nr * big / d2,
        _ => x * x * prob.gamma_nr * big / (2.0 * d2),
    }
}

/// Band-integrated emitted power above the photonic background:
/// trapezoid of hbar omega (n_out - n_B(omega, T_ph)) over [band.0, band.1],
/// in meV^2 (energy times occupancy per unit angular-frequency measure
/// expressed in meV). No absolute radiometric scale is attached.
pub fn integrated_power(s: &ThermalScenario, band: (f64, f64)) -> Result<f64> {
    let spec = emitted_spectrum(s)?;
    let mut acc = 0.0;
    for i in 0..spec.omega_mev.len() - 1 {
        let (w0, w1) = (spec.omega_mev[i], spec.omega_mev[i + 1]);
        if w1 < band.0 || w0 > band.1 {
            continue;
        }
        let y0 = w0 * (spec.photons_out[i] - spec.planck_ph[i]);
        let y1 = w1 * (spec.photons_out[i + 1] - spec.planck_ph[i + 1]);
        acc += 0.5 * (y0 + y1) * (w1 - w0);
    }
    Ok(acc)
}
