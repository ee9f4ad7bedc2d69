//! Multisubband plasmons: dipole-dipole coupling between intersubband
//! transitions, Bogoliubov diagonalization of the quadratic Hamiltonian,
//! bright-mode identification, superradiant decay rate, and absorption
//! spectra with and without the coupling.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::constants::{mev_to_radps, C_LIGHT, EPS0, HBAR, HBAR_MEV_S};
use crate::error::{Error, Result};
use crate::wellbands::{trapz, TransitionSet};

/// Bare transition energies and the symmetric dipole-dipole matrix
/// Xi_ab = (S / 2 hbar eps0 eps_s) Int j_a j_b dz / (w_a w_b), in meV, so that
/// H_dd = sum hbar Xi_ab (B_a^dag + B_a)(B_b^dag + B_b).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CouplingMatrix {
    pub bare_mev: Vec<f64>,
    pub xi_mev: Vec<Vec<f64>>,
}

/// Plasmon modes from the Bogoliubov transformation.
///
/// `amp_resonant` / `amp_antiresonant` are the (x, y) coefficient rows of
/// P_n = sum_a x_na B_a + y_na B_a^dag; their symplectic norm x.x - y.y is +1.
/// Mode currents J_n(z) carry the same sqrt(S) scaling as the transition
/// currents. Weights are |Int J_n dz|^2 / omega_n normalized to sum 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlasmonModeSet {
    pub z_nm: Vec<f64>,
    pub step_nm: f64,
    pub frequencies_mev: Vec<f64>,
    pub mode_currents: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub bright_index: usize,
    pub amp_resonant: Vec<Vec<f64>>,
    pub amp_antiresonant: Vec<Vec<f64>>,
}

impl PlasmonModeSet {
    /// Bright-mode frequency omega_0 (meV).
    pub fn omega0_mev(&self) -> f64 {
        self.frequencies_mev[self.bright_index]
    }

    /// integral of sqrt(S) J_n over z, in amperes.
    pub fn integrated_current(&self, n: usize) -> f64 {
        trapz(&self.mode_currents[n], self.step_nm) * 1e-9
    }
}

/// Dipole-dipole matrix from the transition currents.
pub fn build_coupling_matrix(ts: &TransitionSet, eps_s: f64) -> CouplingMatrix {
    let n = ts.transitions.len();
    let mut xi = vec![vec![0.0f64; n]; n];
    for a in 0..n {
        let wa = mev_to_radps(ts.transitions[a].energy_mev);
        for b in a..n {
            let wb = mev_to_radps(ts.transitions[b].energy_mev);
            let overlap = ts.current_overlap(a, b); // A^2/m
            let xi_radps = overlap / (2.0 * HBAR * EPS0 * eps_s * wa * wb);
            let v = xi_radps * HBAR_MEV_S;
            xi[a][b] = v;
            xi[b][a] = v;
        }
    }
    CouplingMatrix {
        bare_mev: ts.transitions.iter().map(|t| t.energy_mev).collect(),
        xi_mev: xi,
    }
}

/// Diagonalize H = sum hbar w_a B^dag B + H_dd.
///
/// The 2N x 2N symplectic problem reduces to the N x N symmetric one
/// C = W^{1/2} (W + 4 Xi) W^{1/2} with eigenvalues omega_n^2; the
/// eigenvectors give u_n = W^{1/2} v_n / sqrt(omega_n) and
/// s_n = (W + 4 Xi) u_n / omega_n, from which x = (s+u)/2, y = (s-u)/2 and
/// J_n(z) = omega_n sum_a u_na j_a(z) / w_a.
pub fn diagonalize_bogoliubov(cm: &CouplingMatrix, ts: &TransitionSet) -> Result<PlasmonModeSet> {
    let n = cm.bare_mev.len();
    if n == 0 {
        return Err(Error::InvalidInput("no transitions to diagonalize".into()));
    }
    let w = DVector::from_iterator(n, cm.bare_mev.iter().cloned());
    let mut w4xi = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            w4xi[(a, b)] = 4.0 * cm.xi_mev[a][b] + if a == b { w[a] } else { 0.0 };
        }
    }
    let sqrt_w = w.map(|x| x.sqrt());
    let mut c = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            c[(a, b)] = sqrt_w[a] * w4xi[(a, b)] * sqrt_w[b];
        }
    }
    // Enforce exact symmetry against rounding before the eigensolve.
    for a in 0..n {
        for b in a + 1..n {
            let s = 0.5 * (c[(a, b)] + c[(b, a)]);
            c[(a, b)] = s;
            c[(b, a)] = s;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());

    let mut frequencies = Vec::with_capacity(n);
    let mut amp_resonant = Vec::with_capacity(n);
    let mut amp_antiresonant = Vec::with_capacity(n);
    let mut mode_currents = Vec::with_capacity(n);
    let mut strengths = Vec::with_capacity(n);

    let npts = ts.z_nm.len();
    for &idx in &order {
        let lam = eig.eigenvalues[idx];
        if lam <= 0.0 {
            return Err(Error::NonPositiveSpectrum { value_mev2: lam });
        }
        let omega = lam.sqrt();
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().cloned().collect();
        fix_sign(&mut v);
        let u: Vec<f64> = (0..n).map(|a| sqrt_w[a] * v[a] / omega.sqrt()).collect();
        let s: Vec<f64> = (0..n)
            .map(|a| (0..n).map(|b| w4xi[(a, b)] * u[b]).sum::<f64>() / omega)
            .collect();
        let x: Vec<f64> = (0..n).map(|a| 0.5 * (s[a] + u[a])).collect();
        let y: Vec<f64> = (0..n).map(|a| 0.5 * (s[a] - u[a])).collect();

        let mut current = vec![0.0f64; npts];
        for a in 0..n {
            let scale = omega * u[a] / cm.bare_mev[a];
            for (cp, jp) in current.iter_mut().zip(&ts.currents[a]) {
                *cp += scale * jp;
            }
        }
        let int_j = trapz(&current, ts.step_nm) * 1e-9;
        strengths.push(int_j * int_j / omega);

        frequencies.push(omega);
        amp_resonant.push(x);
        amp_antiresonant.push(y);
        mode_currents.push(current);
    }

    let total: f64 = strengths.iter().sum();
    let weights: Vec<f64> = strengths.iter().map(|s| s / total).collect();
    // argmax weight; strict > keeps the lowest frequency on ties.
    let mut bright = 0usize;
    for (i, &w) in weights.iter().enumerate() {
        if w > weights[bright] {
            bright = i;
        }
    }
    Ok(PlasmonModeSet {
        z_nm: ts.z_nm.clone(),
        step_nm: ts.step_nm,
        frequencies_mev: frequencies,
        mode_currents,
        weights,
        bright_index: bright,
        amp_resonant,
        amp_antiresonant,
    })
}

fn fix_sign(v: &mut [f64]) {
    let mut peak = 0usize;
    let mut best = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            peak = i;
        }
    }
    if v[peak] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Free-space spontaneous emission rate of mode `n`,
/// hbar Gamma = |Int sqrt(S) J_n dz|^2 / (hbar eps0 sqrt(eps_s) c omega_n),
/// returned in meV. Independent of the quantization area.
pub fn mode_gamma_mev(modes: &PlasmonModeSet, n: usize, eps_s: f64) -> f64 {
    let int_j = modes.integrated_current(n);
    let omega = mev_to_radps(modes.frequencies_mev[n]);
    let gamma_radps = int_j * int_j / (HBAR * EPS0 * eps_s.sqrt() * C_LIGHT * omega);
    gamma_radps * HBAR_MEV_S
}

/// hbar Gamma_0 of the bright mode (meV).
pub fn bright_gamma0(modes: &PlasmonModeSet, eps_s: f64) -> f64 {
    mode_gamma_mev(modes, modes.bright_index, eps_s)
}

/// Absorption spectra on a frequency grid: the single-particle spectrum
/// (bare transitions) and the plasmon spectrum (Bogoliubov modes), both as
/// sums of unit-area Lorentzians of HWHM gamma/2 weighted by
/// |Int j dz|^2 / w. Both columns are normalized by the single-particle
/// total, so the single-particle spectrum has unit area and the plasmon one
/// keeps it by the f-sum rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbsorptionSpectrum {
    pub omega_mev: Vec<f64>,
    pub single_particle: Vec<f64>,
    pub plasmon: Vec<f64>,
}

pub fn absorption_spectrum(
    ts: &TransitionSet,
    modes: &PlasmonModeSet,
    gamma_mev: f64,
    omega_grid_mev: &[f64],
) -> Result<AbsorptionSpectrum> {
    if !(gamma_mev > 0.0) {
        return Err(Error::InvalidInput("broadening must be positive".into()));
    }
    let sp_strength: Vec<f64> = (0..ts.transitions.len())
        .map(|a| {
            let i = ts.integrated_current(a);
            i * i / ts.transitions[a].energy_mev
        })
        .collect();
    let msp_strength: Vec<f64> = (0..modes.frequencies_mev.len())
        .map(|n| {
            let i = modes.integrated_current(n);
            i * i / modes.frequencies_mev[n]
        })
        .collect();
    let total: f64 = sp_strength.iter().sum();
    let hwhm = 0.5 * gamma_mev;
    let lor = |w: f64, c: f64| hwhm / std::f64::consts::PI / ((w - c) * (w - c) + hwhm * hwhm);

    let mut single = Vec::with_capacity(omega_grid_mev.len());
    let mut coupled = Vec::with_capacity(omega_grid_mev.len());
    for &w in omega_grid_mev {
        let mut s = 0.0;
        for (st, t) in sp_strength.iter().zip(&ts.transitions) {
            s += st / total * lor(w, t.energy_mev);
        }
        single.push(s);
        let mut p = 0.0;
        for (st, wn) in msp_strength.iter().zip(&modes.frequencies_mev) {
            p += st / total * lor(w, *wn);
        }
        coupled.push(p);
    }
    Ok(AbsorptionSpectrum {
        omega_mev: omega_grid_mev.to_vec(),
        single_particle: single,
        plasmon: coupled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wellbands::{build_transitions, fill_subbands, solve_subbands, WellProfile};

    fn chain(
        well_nm: f64,
        barrier: f64,
        ns: f64,
        n_states: usize,
    ) -> (TransitionSet, CouplingMatrix) {
        let p = WellProfile::square(well_nm, barrier, 0.043, 12.9, ns, 1024, 20.0);
        let states = solve_subbands(&p, n_states).unwrap();
        let sb = fill_subbands(states, ns, 0.043, 0.0);
        let ts = build_transitions(&sb, 0.043);
        let cm = build_coupling_matrix(&ts, 12.9);
        (ts, cm)
    }

    fn single_transition() -> (TransitionSet, CouplingMatrix) {
        // One occupied subband in a hard-wall well: 0->1 dominates; restrict
        // to two states so only pairs (0,1) appear.
        let p = WellProfile::square(15.0, 1e8, 0.043, 12.9, 1e12, 3601, 3.75);
        let states = solve_subbands(&p, 2).unwrap();
        let sb = fill_subbands(states, 1e12, 0.043, 0.0);
        let ts = build_transitions(&sb, 0.043);
        let cm = build_coupling_matrix(&ts, 12.9);
        (ts, cm)
    }

    #[test]
    fn xi_symmetric_nonnegative_diagonal() {
        let (_, cm) = chain(15.0, 520.0, 1.5e13, 5);
        let n = cm.bare_mev.len();
        assert!(n >= 3);
        for a in 0..n {
            assert!(cm.xi_mev[a][a] >= 0.0);
            for b in 0..n {
                let (x, y) = (cm.xi_mev[a][b], cm.xi_mev[b][a]);
                assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300));
            }
        }
    }

    /// Algebraic identity Xi_11 = omega_P^2 / (4 w1), with omega_P^2 computed
    /// independently from the current overlap.
    #[test]
    fn single_transition_xi_identity() {
        let (ts, cm) = single_transition();
        assert_eq!(ts.transitions.len(), 1);
        let w_mev = ts.transitions[0].energy_mev;
        let w = mev_to_radps(w_mev);
        let wp2 = 2.0 * ts.current_overlap(0, 0) / (HBAR * EPS0 * 12.9 * w);
        let wp2_mev2 = wp2 * HBAR_MEV_S * HBAR_MEV_S;
        let expect = wp2_mev2 / (4.0 * w_mev);
        assert!((cm.xi_mev[0][0] - expect).abs() / expect < 1e-12);
    }

    /// Hand-solved 2x2 symplectic oracle: a single mode shifts to
    /// omega^2 = w^2 + omega_P^2.
    #[test]
    fn depolarization_shift() {
        let (ts, cm) = single_transition();
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        let w = ts.transitions[0].energy_mev;
        let wp2_mev2 = 4.0 * w * cm.xi_mev[0][0];
        let expect2 = w * w + wp2_mev2;
        let got2 = modes.frequencies_mev[0] * modes.frequencies_mev[0];
        assert!((got2 - expect2).abs() / expect2 < 1e-10);
    }

    #[test]
    fn uncoupled_limit_returns_bare_modes() {
        let (ts, cm) = chain(15.0, 520.0, 1.5e13, 4);
        let zero = CouplingMatrix {
            bare_mev: cm.bare_mev.clone(),
            xi_mev: vec![vec![0.0; cm.bare_mev.len()]; cm.bare_mev.len()],
        };
        let modes = diagonalize_bogoliubov(&zero, &ts).unwrap();
        for (n, wn) in modes.frequencies_mev.iter().enumerate() {
            assert!((wn - cm.bare_mev[n]).abs() / wn < 1e-12);
            for (a, b) in modes.mode_currents[n].iter().zip(&ts.currents[n]) {
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1e-12));
            }
        }
    }

    #[test]
    fn disjoint_supports_do_not_couple() {
        // Hand-built currents on disjoint halves of the grid.
        let npts = 101;
        let z: Vec<f64> = (0..npts).map(|i| i as f64).collect();
        let mut j1 = vec![0.0; npts];
        let mut j2 = vec![0.0; npts];
        for i in 0..45 {
            j1[i] = 1e-4;
        }
        for i in 55..npts {
            j2[i] = 2e-4;
        }
        let ts = TransitionSet {
            z_nm: z,
            step_nm: 1.0,
            transitions: vec![
                crate::wellbands::Transition {
                    lower: 0,
                    upper: 1,
                    energy_mev: 100.0,
                    delta_n_cm2: 1e12,
                },
                crate::wellbands::Transition {
                    lower: 1,
                    upper: 2,
                    energy_mev: 150.0,
                    delta_n_cm2: 1e12,
                },
            ],
            currents: vec![j1, j2],
        };
        let cm = build_coupling_matrix(&ts, 12.9);
        assert_eq!(cm.xi_mev[0][1], 0.0);
        assert!(cm.xi_mev[0][0] > 0.0 && cm.xi_mev[1][1] > 0.0);
    }

    /// Xi is linear in the sheet density at frozen wavefunctions.
    #[test]
    fn xi_vanishes_with_density() {
        let xi_at = |ns: f64| {
            let p = WellProfile::square(15.0, 1e6, 0.043, 12.9, ns, 1024, 4.0);
            let states = solve_subbands(&p, 2).unwrap();
            let sb = fill_subbands(states, ns, 0.043, 0.0);
            let ts = build_transitions(&sb, 0.043);
            build_coupling_matrix(&ts, 12.9).xi_mev[0][0]
        };
        let r = xi_at(1e10) / xi_at(1e12);
        assert!((r - 0.01).abs() < 1e-4, "ratio {r}");
    }

    #[test]
    fn symplectic_norms_and_fsum() {
        let (ts, cm) = chain(15.0, 520.0, 1.5e13, 6);
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        let n = modes.frequencies_mev.len();
        // [P_n, P_m^dag] = x_n.x_m - y_n.y_m = delta_nm; [P_n, P_m] = 0.
        for a in 0..n {
            for b in 0..n {
                let xx: f64 = modes.amp_resonant[a]
                    .iter()
                    .zip(&modes.amp_resonant[b])
                    .map(|(p, q)| p * q)
                    .sum();
                let yy: f64 = modes.amp_antiresonant[a]
                    .iter()
                    .zip(&modes.amp_antiresonant[b])
                    .map(|(p, q)| p * q)
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((xx - yy - want).abs() < 1e-8, "norm ({a},{b})");
                let xy: f64 = modes.amp_resonant[a]
                    .iter()
                    .zip(&modes.amp_antiresonant[b])
                    .map(|(p, q)| p * q)
                    .sum();
                let yx: f64 = modes.amp_antiresonant[a]
                    .iter()
                    .zip(&modes.amp_resonant[b])
                    .map(|(p, q)| p * q)
                    .sum();
                assert!((xy - yx).abs() < 1e-8, "sympl ({a},{b})");
            }
        }
        // f-sum: sum |Int J|^2/omega = sum |Int j|^2/w.
        let lhs: f64 = (0..n)
            .map(|i| {
                let s = modes.integrated_current(i);
                s * s / modes.frequencies_mev[i]
            })
            .sum();
        let rhs: f64 = (0..ts.transitions.len())
            .map(|a| {
                let s = ts.integrated_current(a);
                s * s / ts.transitions[a].energy_mev
            })
            .sum();
        assert!((lhs - rhs).abs() / rhs < 1e-8, "{lhs} vs {rhs}");
    }

    /// The reference well concentrates the oscillator strength in one bright
    /// mode.
    #[test]
    fn bright_mode_dominates() {
        let (ts, cm) = chain(15.0, 520.0, 1.5e13, 6);
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        assert!(modes.weights.iter().all(|w| *w >= -1e-15));
        let total: f64 = modes.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(
            modes.weights[modes.bright_index] > 0.5,
            "bright weight {}",
            modes.weights[modes.bright_index]
        );
    }

    #[test]
    fn bright_frequency_monotone_in_density() {
        let mut last = 0.0;
        for ns in [1e12, 5e12, 1.5e13] {
            let (ts, cm) = chain(15.0, 520.0, ns, 6);
            let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
            let w0 = modes.omega0_mev();
            assert!(w0 >= last, "omega0 {w0} dropped below {last} at Ns={ns}");
            last = w0;
        }
    }

    /// Gamma0 doubles with all populations doubled at frozen wavefunctions
    /// (linear regime: mode rotation under the doubled coupling stays small).
    #[test]
    fn gamma0_linear_in_population() {
        let p = WellProfile::square(15.0, 520.0, 0.043, 12.9, 1.5e12, 1024, 20.0);
        let states = solve_subbands(&p, 4).unwrap();
        let sb1 = fill_subbands(states.clone(), 1.5e12, 0.043, 0.0);
        let mut sb2 = sb1.clone();
        for p in sb2.populations_cm2.iter_mut() {
            *p *= 2.0;
        }
        let g = |sb: &crate::wellbands::SubbandSet| {
            let ts = build_transitions(sb, 0.043);
            let cm = build_coupling_matrix(&ts, 12.9);
            let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
            bright_gamma0(&modes, 12.9)
        };
        let (g1, g2) = (g(&sb1), g(&sb2));
        assert!((g2 / g1 - 2.0).abs() < 0.05 * 2.0, "ratio {}", g2 / g1);
    }

    /// 100 nm well: hbar Gamma_0 approximately proportional to N_s over
    /// 1e12..1e14 cm^-2 and reaching the 10 meV scale at the top.
    #[test]
    fn gamma0_scales_with_density_100nm() {
        let mut logs: Vec<(f64, f64)> = Vec::new();
        for ns in [1e12, 1e13, 1e14] {
            let p = WellProfile::square(100.0, 520.0, 0.043, 12.9, ns, 1024, 20.0);
            let states = solve_subbands(&p, 32).unwrap();
            let sb = fill_subbands(states, ns, 0.043, 0.0);
            let ts = build_transitions(&sb, 0.043);
            let cm = build_coupling_matrix(&ts, 12.9);
            let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
            logs.push((ns.ln(), bright_gamma0(&modes, 12.9).ln()));
        }
        let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
        assert!((slope - 1.0).abs() < 0.15, "log-log slope {slope}");
        assert!(logs[2].1.exp() > 10.0, "hbar Gamma0 at 1e14: {} meV", logs[2].1.exp());
    }

    #[test]
    fn nonpositive_spectrum_detected() {
        let (ts, mut cm) = single_transition();
        let w = cm.bare_mev[0];
        cm.xi_mev[0][0] = -0.3 * w; // w^2 + 4 w Xi < 0
        match diagonalize_bogoliubov(&cm, &ts) {
            Err(Error::NonPositiveSpectrum { .. }) => {}
            other => panic!("expected NonPositiveSpectrum, got {other:?}"),
        }
    }

    #[test]
    fn spectra_match_in_uncoupled_limit() {
        let (ts, cm) = chain(15.0, 520.0, 1.5e13, 5);
        let zero = CouplingMatrix {
            bare_mev: cm.bare_mev.clone(),
            xi_mev: vec![vec![0.0; cm.bare_mev.len()]; cm.bare_mev.len()],
        };
        let modes = diagonalize_bogoliubov(&zero, &ts).unwrap();
        let grid: Vec<f64> = (0..400).map(|i| 40.0 + i as f64).collect();
        let sp = absorption_spectrum(&ts, &modes, 8.0, &grid).unwrap();
        for (a, b) in sp.single_particle.iter().zip(&sp.plasmon) {
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12));
        }
    }

    /// One transition: the plasmon spectrum is the single-particle Lorentzian
    /// rigidly shifted to sqrt(w^2 + omega_P^2); the f-sum keeps the
    /// strength |Int J|^2/omega equal to |Int j|^2/w, so the amplitude is
    /// unchanged.
    #[test]
    fn single_transition_rigid_shift() {
        let (ts, cm) = single_transition();
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        let w = ts.transitions[0].energy_mev;
        let shifted = modes.frequencies_mev[0];
        assert!(shifted > w);
        let delta = shifted - w;
        let grid: Vec<f64> = (1..1500).map(|i| 0.1 * i as f64).collect();
        let grid_shifted: Vec<f64> = grid.iter().map(|x| x + delta).collect();
        let base = absorption_spectrum(&ts, &modes, 6.0, &grid).unwrap();
        let moved = absorption_spectrum(&ts, &modes, 6.0, &grid_shifted).unwrap();
        for i in 0..grid.len() {
            assert!(
                (moved.plasmon[i] - base.single_particle[i]).abs()
                    <= 1e-12 * base.single_particle[i].abs().max(1e-12),
                "i={i}"
            );
        }
    }

    /// Reference well: each mode sits at or above its bare counterpart (the
    /// dipole-dipole matrix is positive semidefinite), the bright plasmon is
    /// blue of the strongest bare transition, and the coupled spectrum peaks
    /// above the single-particle one.
    #[test]
    fn plasmon_peaks_blueshifted() {
        let (ts, cm) = chain(15.0, 520.0, 1.5e13, 6);
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        for (wn, wa) in modes.frequencies_mev.iter().zip(&cm.bare_mev) {
            assert!(*wn >= *wa - 1e-9, "{wn} below bare {wa}");
        }
        let strongest = (0..ts.transitions.len())
            .max_by(|&a, &b| {
                let sa = ts.integrated_current(a).powi(2) / ts.transitions[a].energy_mev;
                let sb = ts.integrated_current(b).powi(2) / ts.transitions[b].energy_mev;
                sa.partial_cmp(&sb).unwrap()
            })
            .unwrap();
        assert!(modes.omega0_mev() > ts.transitions[strongest].energy_mev);
        let grid: Vec<f64> = (0..3000).map(|i| 20.0 + 0.2 * i as f64).collect();
        let sp = absorption_spectrum(&ts, &modes, 8.0, &grid).unwrap();
        let argmax = |v: &[f64]| {
            let mut b = 0usize;
            for (i, x) in v.iter().enumerate() {
                if *x > v[b] {
                    b = i;
                }
            }
            b
        };
        assert!(grid[argmax(&sp.plasmon)] > grid[argmax(&sp.single_particle)]);
    }
}

#[cfg(test)]
mod validation_tests {
    use super::*;
    use crate::wellbands::{build_transitions, fill_subbands, solve_subbands, WellProfile};

    #[test]
    fn spectrum_needs_positive_broadening() {
        let p = WellProfile::square(15.0, 1e8, 0.043, 12.9, 1e12, 3601, 3.75);
        let states = solve_subbands(&p, 2).unwrap();
        let sb = fill_subbands(states, 1e12, 0.043, 0.0);
        let ts = build_transitions(&sb, 0.043);
        let cm = build_coupling_matrix(&ts, 12.9);
        let modes = diagonalize_bogoliubov(&cm, &ts).unwrap();
        assert!(absorption_spectrum(&ts, &modes, 0.0, &[100.0]).is_err());
        assert!(absorption_spectrum(&ts, &modes, -1.0, &[100.0]).is_err());
    }
}
