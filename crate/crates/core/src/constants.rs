//! Physical constants (CODATA 2018) and the unit-boundary conversions.
//!
//! All I/O-facing quantities are meV, nm, K, cm^-2 and degrees; everything
//! that needs absolute scales (currents, rates, occupancies) is evaluated in
//! SI and converted here. No other module defines a physical constant.

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge (C).
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Free-electron mass (kg).
pub const M_ELECTRON: f64 = 9.109_383_701_5e-31;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant (J/K).
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

/// One meV in joules.
pub const MEV: f64 = E_CHARGE * 1e-3;

/// hbar^2 / (2 m0) expressed in meV nm^2 (= 38.0998...).
///
/// Kinetic prefactor of the envelope-function Hamiltonian on a nm grid with
/// energies in meV and masses in units of m0.
pub const HBAR2_OVER_2M0_MEV_NM2: f64 = HBAR * HBAR / (2.0 * M_ELECTRON) / MEV * 1e18;

/// hbar in meV s; converts angular frequencies (rad/s) to energies (meV).
pub const HBAR_MEV_S: f64 = HBAR / MEV;

/// 2D density of states m0/(pi hbar^2) in meV^-1 cm^-2; multiply by the
/// dimensionless effective mass.
pub const DOS_2D_PER_MASS: f64 = M_ELECTRON / (std::f64::consts::PI * HBAR * HBAR) * MEV * 1e-4;

/// meV -> rad/s.
pub fn mev_to_radps(e_mev: f64) -> f64 {
    e_mev * MEV / HBAR
}

/// cm^-2 -> m^-2.
pub fn cm2_to_m2(n_cm2: f64) -> f64 {
    n_cm2 * 1e4
}

/// Bose-Einstein occupancy of a mode of energy `e_mev` at temperature `t_k`.
///
/// Returns 0 for non-positive temperature; uses exp_m1 so the classical
/// (k_B T >> hbar w) limit stays accurate.
pub fn bose_occupancy(e_mev: f64, t_k: f64) -> f64 {
    if t_k <= 0.0 {
        return 0.0;
    }
    let x = e_mev * MEV / (K_BOLTZMANN * t_k);
    1.0 / x.exp_m1()
}
