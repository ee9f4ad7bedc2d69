//! Mixed light-matter eigenstates of the coupled continuum problem: the
//! detuning function z, the plasmon amplitude |f|^2, the plasmon Hopfield
//! weight, the shifted non-radiative (epsilon-near-zero) branch below the
//! light cone, and (k, Omega) dispersion maps.
//!
//! All frequencies are normalized to omega_0 and wavevectors to
//! sqrt(eps_s) omega_0 / c, so the light cone is the diagonal nu = k_norm.

use serde::{Deserialize, Serialize};

use crate::coupling::{lamb_shift, radiative_rate_k, CouplingParams};
use crate::error::{Error, Result};

/// One (k, Omega) evaluation. `f2` is omega_0 |f(Omega)|^2 (dimensionless).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EigenstateSample {
    pub k_norm: f64,
    pub omega_norm: f64,
    pub z: f64,
    pub f2: f64,
    pub plasmon_weight: f64,
}

fn ratios(p: &CouplingParams, k_norm: f64, omega_norm: f64) -> Result<(f64, f64)> {
    if omega_norm == k_norm {
        return Err(Error::LightConePoint);
    }
    let w_mev = omega_norm * p.omega0_mev;
    let rad = radiative_rate_k(p, k_norm, w_mev) / p.omega0_mev;
    let shift = lamb_shift(p, k_norm, w_mev) / p.omega0_mev;
    Ok((rad, shift))
}

/// Detuning function z(Omega) from
/// Omega^2 - omega_0^2 - omega_0 G_k(Omega) = omega_0 [Gamma_k(Omega) + gamma] z.
pub fn z_function(p: &CouplingParams, k_norm: f64, omega_norm: f64) -> Result<f64> {
    if !(omega_norm > 0.0) {
        return Err(Error::InvalidInput("Omega must be positive".into()));
    }
    let (rad, shift) = ratios(p, k_norm, omega_norm)?;
    let gam = p.gamma_nr_mev / p.omega0_mev;
    Ok((omega_norm * omega_norm - 1.0 - shift) / (rad + gam))
}

/// Plasmon amplitude omega_0 |f(Omega)|^2 of the coupled eigenstate:
/// (1/2pi)(gamma + Gamma) / ( [Omega - 1 - G/(1+Omega)]^2
///                            + 4/(1+Omega)^2 [(gamma+Gamma)/2]^2 ).
pub fn f_weight(p: &CouplingParams, k_norm: f64, omega_norm: f64) -> Result<f64> {
    if !(omega_norm > 0.0) {
        return Err(Error::InvalidInput("Omega must be positive".into()));
    }
    let (rad, shift) = ratios(p, k_norm, omega_norm)?;
    let gam = p.gamma_nr_mev / p.omega0_mev;
    let nu = omega_norm;
    let a = nu - 1.0 - shift / (1.0 + nu);
    let b2 = 4.0 / ((1.0 + nu) * (1.0 + nu)) * ((gam + rad) / 2.0).powi(2);
    let f2 = (gam + rad) / (2.0 * std::f64::consts::PI) / (a * a + b2);
    debug_assert!(
        {
            // Bosonic normalization identity, evaluated through z.
            let z = (nu * nu - 1.0 - shift) / (rad + gam);
            let lhs = f2 * 2.0 * std::f64::consts::PI / ((nu + 1.0) * (nu + 1.0))
                * (gam + rad)
                * (1.0 + z * z);
            (lhs - 1.0).abs() < 1e-10
        },
        "normalization identity violated"
    );
    Ok(f2)
}

/// Plasmon Hopfield weight |f|^2 [1 - (Omega-omega_0)^2/(Omega+omega_0)^2].
/// The bracket (first power) equals the symplectic norm difference
/// |f|^2 - |f~|^2 of the resonant and antiresonant amplitudes.
pub fn plasmon_hopfield_weight(p: &CouplingParams, k_norm: f64, omega_norm: f64) -> Result<f64> {
    let f2 = f_weight(p, k_norm, omega_norm)?;
    let r = antiresonant_plasmon_ratio(omega_norm);
    Ok(f2 * (1.0 - r * r))
}

/// Antiresonant-to-resonant plasmon amplitude ratio f~/f = (Omega-w0)/(Omega+w0).
pub fn antiresonant_plasmon_ratio(omega_norm: f64) -> f64 {
    (omega_norm - 1.0) / (omega_norm + 1.0)
}

/// Antiresonant-to-resonant bath amplitude ratio g~/g = (W'-W)/(W'+W).
pub fn antiresonant_bath_ratio(omega_prime_norm: f64, omega_norm: f64) -> f64 {
    (omega_prime_norm - omega_norm) / (omega_prime_norm + omega_norm)
}

/// Center of the non-radiative (epsilon-near-zero) branch below the light
/// cone: the root of Omega^2 = omega_0^2 + omega_0 G_k(Omega) on (0, k),
/// located by bisection. With G < 0 the center lies below omega_0.
pub fn enz_center(p: &CouplingParams, k_norm: f64) -> Result<f64> {
    if !(k_norm > 0.0) {
        return Err(Error::InvalidInput("ENZ branch needs k > 0".into()));
    }
    let f = |nu: f64| {
        let shift = lamb_shift(p, k_norm, nu * p.omega0_mev) / p.omega0_mev;
        nu * nu - 1.0 - shift
    };
    let mut lo = 1e-9 * k_norm;
    let mut hi = k_norm * (1.0 - 1e-15);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::InvalidInput(
            "no ENZ center bracketed below the light cone".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * k_norm {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Plasmon-weight map over (k, Omega). `weight[ik][iw]` follows the k grid
/// row-wise; `cone_mask[ik][iw]` marks cells within half a cell of the light
/// cone (exact points get weight 0 and a mask).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DispersionMap {
    pub k_norm: Vec<f64>,
    pub omega_norm: Vec<f64>,
    pub weight: Vec<Vec<f64>>,
    pub cone_mask: Vec<Vec<bool>>,
}

impl DispersionMap {
    pub fn max_weight(&self) -> f64 {
        self.weight
            .iter()
            .flat_map(|row| row.iter())
            .cloned()
            .fold(0.0, f64::max)
    }
}

/// Default 512 x 512 grids over k, Omega in (0, 3]; the half-cell offset of
/// the Omega grid guarantees no point lands exactly on the light cone.
pub fn default_map_grids() -> (Vec<f64>, Vec<f64>) {
    let n = 512usize;
    let k: Vec<f64> = (0..n).map(|i| 3.0 * i as f64 / (n - 1) as f64).collect();
    let w: Vec<f64> = (0..n).map(|j| 3.0 * (j as f64 + 0.5) / n as f64).collect();
    (k, w)
}

pub fn dispersion_map(
    p: &CouplingParams,
    k_grid: &[f64],
    omega_grid: &[f64],
) -> Result<DispersionMap> {
    let dk = if k_grid.len() > 1 {
        k_grid[1] - k_grid[0]
    } else {
        0.0
    };
    let dw = if omega_grid.len() > 1 {
        omega_grid[1] - omega_grid[0]
    } else {
        0.0
    };
    let half_cell = 0.5 * dk.max(dw);
    let mut weight = Vec::with_capacity(k_grid.len());
    let mut mask = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        let mut wrow = Vec::with_capacity(omega_grid.len());
        let mut mrow = Vec::with_capacity(omega_grid.len());
        for &nu in omega_grid {
            let on_cone = nu == k;
            let value = if on_cone {
                0.0
            } else {
                plasmon_hopfield_weight(p, k, nu)?
            };
            wrow.push(value);
            mrow.push(on_cone || (nu - k).abs() <= half_cell);
        }
        weight.push(wrow);
        mask.push(mrow);
    }
    Ok(DispersionMap {
        k_norm: k_grid.to_vec(),
        omega_norm: omega_grid.to_vec(),
        weight,
        cone_mask: mask,
    })
}

/// Full-width at half maximum of the above-cone weight ridge at fixed k,
/// measured on a fine scan plus bisection refinement.
pub fn radiative_ridge_fwhm(p: &CouplingParams, k_norm: f64) -> Result<f64> {
    let lo = k_norm + 1e-6;
    let hi = 4.0f64.max(k_norm + 2.0);
    let n = 6000;
    let f = |nu: f64| plasmon_hopfield_weight(p, k_norm, nu).unwrap_or(0.0);
    let mut best = (lo, f(lo));
    for i in 0..=n {
        let nu = lo + (hi - lo) * i as f64 / n as f64;
        let v = f(nu);
        if v > best.1 {
            best = (nu, v);
        }
    }
    let half = 0.5 * best.1;
    let mut a = lo;
    let mut b = best.0;
    if f(a) >= half {
        return Err(Error::HalfMaxNotBracketed { side: "lower" });
    }
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        if f(m) < half {
            a = m;
        } else {
            b = m;
        }
    }
    let left = 0.5 * (a + b);
    let mut c = best.0;
    let mut d = hi;
    if f(d) >= half {
        return Err(Error::HalfMaxNotBracketed { side: "upper" });
    }
    for _ in 0..100 {
        let m = 0.5 * (c + d);
        if f(m) < half {
            d = m;
        } else {
            c = m;
        }
    }
    Ok(0.5 * (c + d) - left)
}

/// Evaluate everything at one point.
pub fn sample(p: &CouplingParams, k_norm: f64, omega_norm: f64) -> Result<EigenstateSample> {
    Ok(EigenstateSample {
        k_norm,
        omega_norm,
        z: z_function(p, k_norm, omega_norm)?,
        f2: f_weight(p, k_norm, omega_norm)?,
        plasmon_weight: plasmon_hopfield_weight(p, k_norm, omega_norm)?,
    })
}
