//! Quantum-well electronic structure: bound subbands of a 1D conduction-band
//! profile, Fermi filling to a target sheet density, and intersubband
//! transition currents.

use serde::{Deserialize, Serialize};

use crate::constants::{
    cm2_to_m2, DOS_2D_PER_MASS, E_CHARGE, HBAR, HBAR2_OVER_2M0_MEV_NM2, K_BOLTZMANN, MEV,
    M_ELECTRON,
};
use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

/// Estimated E1 discretization error above this aborts a solve (meV).
pub const GRID_ERROR_LIMIT_MEV: f64 = 0.1;

/// Discretized conduction-band profile. Positions in nm, energies in meV,
/// masses in units of the free-electron mass, densities in cm^-2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WellProfile {
    pub z_nm: Vec<f64>,
    pub potential_mev: Vec<f64>,
    pub eff_mass: Vec<f64>,
    pub eps_s: f64,
    pub sheet_density_cm2: f64,
    pub temperature_k: f64,
}

impl WellProfile {
    /// Square well of width `well_nm` with flat barriers of height
    /// `barrier_mev` padded `pad_nm` on each side, on a uniform grid of
    /// `grid_points` points.
    ///
    /// The step potential is sampled as a cell average so the effective well
    /// width does not depend on how the edges fall relative to the grid;
    /// sharp-edge sampling would add an O(h) width error that dominates the
    /// O(h^2) scheme.
    pub fn square(
        well_nm: f64,
        barrier_mev: f64,
        eff_mass: f64,
        eps_s: f64,
        sheet_density_cm2: f64,
        grid_points: usize,
        pad_nm: f64,
    ) -> Self {
        let total = well_nm + 2.0 * pad_nm;
        let n = grid_points.max(3);
        let step = total / (n - 1) as f64;
        let z_nm: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
        let potential_mev = z_nm
            .iter()
            .map(|&z| {
                let a = (z - 0.5 * step).max(pad_nm);
                let b = (z + 0.5 * step).min(pad_nm + well_nm);
                let inside = (b - a).max(0.0) / step;
                barrier_mev * (1.0 - inside)
            })
            .collect();
        Self {
            z_nm,
            potential_mev,
            eff_mass: vec![eff_mass; n],
            eps_s,
            sheet_density_cm2,
            temperature_k: 0.0,
        }
    }

    pub fn step_nm(&self) -> f64 {
        self.z_nm[1] - self.z_nm[0]
    }

    /// Midpoint-refined copy: 2n-1 nodes at half the spacing, potential and
    /// mass linearly interpolated. The continuum problem is unchanged, so
    /// solving a profile and its refinements isolates the O(h^2)
    /// discretization error; the internal Richardson gate uses the same rule.
    pub fn refined(&self) -> Self {
        let (rv, rm) = refine_profile(&self.potential_mev, &self.eff_mass);
        let h = 0.5 * self.step_nm();
        let z0 = self.z_nm[0];
        Self {
            z_nm: (0..rv.len()).map(|i| z0 + i as f64 * h).collect(),
            potential_mev: rv,
            eff_mass: rm,
            eps_s: self.eps_s,
            sheet_density_cm2: self.sheet_density_cm2,
            temperature_k: self.temperature_k,
        }
    }

    /// Mean effective mass inside the well region (minimum-potential points);
    /// the density-of-states and current-prefactor mass for uniform-mass
    /// profiles is just that value.
    pub fn well_mass(&self) -> f64 {
        let vmin = self.potential_mev.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut sum = 0.0;
        let mut cnt = 0usize;
        for (v, m) in self.potential_mev.iter().zip(&self.eff_mass) {
            if *v <= vmin + 1e-9 {
                sum += m;
                cnt += 1;
            }
        }
        sum / cnt as f64
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.z_nm.len();
        if n < 3 {
            return Err(Error::InvalidInput("z_grid needs at least 3 points".into()));
        }
        if self.potential_mev.len() != n || self.eff_mass.len() != n {
            return Err(Error::InvalidInput(
                "potential and eff_mass must match z_grid length".into(),
            ));
        }
        let h = self.z_nm[1] - self.z_nm[0];
        if !(h > 0.0) {
            return Err(Error::InvalidInput("z_grid must be strictly increasing".into()));
        }
        for w in self.z_nm.windows(2) {
            let d = w[1] - w[0];
            if !(d > 0.0) || ((d - h) / h).abs() > 1e-9 {
                return Err(Error::InvalidInput(
                    "z_grid must be uniform to 1 part in 1e9".into(),
                ));
            }
        }
        if self.potential_mev.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("potential must be finite".into()));
        }
        if self.eff_mass.iter().any(|m| !(*m > 0.0)) {
            return Err(Error::InvalidInput("eff_mass must be positive".into()));
        }
        if !(self.eps_s >= 1.0) {
            return Err(Error::InvalidInput("eps_s must be >= 1".into()));
        }
        if !(self.sheet_density_cm2 >= 0.0) {
            return Err(Error::InvalidInput("sheet_density must be >= 0".into()));
        }
        Ok(())
    }
}

/// Bound states of a profile: energies ascending, wavefunctions in nm^-1/2 on
/// the full grid (zero at both ends), trapezoid-orthonormal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundStates {
    pub z_nm: Vec<f64>,
    pub step_nm: f64,
    pub energies_mev: Vec<f64>,
    pub wavefunctions: Vec<Vec<f64>>,
}

/// Bound states plus Fermi level and per-subband sheet densities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubbandSet {
    pub states: BoundStates,
    pub fermi_level_mev: f64,
    pub populations_cm2: Vec<f64>,
}

/// One intersubband transition (indices into the subband list, 0-based).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Transition {
    pub lower: usize,
    pub upper: usize,
    pub energy_mev: f64,
    pub delta_n_cm2: f64,
}

/// Transitions with positive population difference, ordered by energy, plus
/// their current densities.
///
/// Currents are stored as sqrt(S) * j_alpha(z) in A/m so that every
/// downstream observable (couplings, plasma frequencies, radiative rates) is
/// independent of the quantization area S.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionSet {
    pub z_nm: Vec<f64>,
    pub step_nm: f64,
    pub transitions: Vec<Transition>,
    pub currents: Vec<Vec<f64>>,
}

impl TransitionSet {
    /// integral of sqrt(S) j_alpha over z, in amperes.
    pub fn integrated_current(&self, idx: usize) -> f64 {
        trapz(&self.currents[idx], self.step_nm) * 1e-9
    }

    /// integral of (sqrt(S) j_alpha)(sqrt(S) j_beta) over z, SI (A^2/m).
    pub fn current_overlap(&self, a: usize, b: usize) -> f64 {
        let pr: Vec<f64> = self.currents[a]
            .iter()
            .zip(&self.currents[b])
            .map(|(x, y)| x * y)
            .collect();
        trapz(&pr, self.step_nm) * 1e-9
    }
}

/// Trapezoid rule on a uniform grid of spacing `h` (same unit as the result).
pub fn trapz(y: &[f64], h: f64) -> f64 {
    if y.len() < 2 {
        return 0.0;
    }
    let sum: f64 = y.iter().sum();
    h * (sum - 0.5 * (y[0] + y[y.len() - 1]))
}

/// Solve the BenDaniel-Duke eigenproblem
/// -(hbar^2/2) d/dz [1/m*(z) d psi/dz] + V(z) psi = E psi
/// by symmetric finite differences with Dirichlet ends, returning at most
/// `n_states` bound states (energy below the lower of the two boundary
/// potentials).
pub fn solve_subbands(profile: &WellProfile, n_states: usize) -> Result<BoundStates> {
    profile.validate()?;
    if n_states == 0 {
        return Err(Error::InvalidInput("n_states must be >= 1".into()));
    }
    let (energies, vectors) = solve_grid(
        &profile.potential_mev,
        &profile.eff_mass,
        profile.step_nm(),
        n_states,
    );
    let n = profile.z_nm.len();
    let barrier_top = profile.potential_mev[0].min(profile.potential_mev[n - 1]);
    let bound: Vec<usize> = (0..energies.len()).filter(|&i| energies[i] < barrier_top).collect();
    if bound.is_empty() {
        return Err(Error::NoBoundState);
    }

    // One grid-halving Richardson step on E1; O(h^2) scheme, so the error of
    // the coarse value is ~ 4/3 of the level difference.
    let (fine_v, fine_m) = refine_profile(&profile.potential_mev, &profile.eff_mass);
    let (fine_e, _) = solve_grid(&fine_v, &fine_m, 0.5 * profile.step_nm(), 1);
    let est = 4.0 / 3.0 * (energies[0] - fine_e[0]).abs();
    if est > GRID_ERROR_LIMIT_MEV {
        return Err(Error::GridTooCoarse {
            est_mev: est,
            limit_mev: GRID_ERROR_LIMIT_MEV,
        });
    }

    let h = profile.step_nm();
    let mut energies_mev = Vec::with_capacity(bound.len());
    let mut wavefunctions = Vec::with_capacity(bound.len());
    for &i in &bound {
        energies_mev.push(energies[i]);
        // Interior Euclidean-normalized vector -> nm^-1/2 with zero ends;
        // trapezoid orthonormality is then exact.
        let mut psi = vec![0.0f64; n];
        for (j, &v) in vectors[i].iter().enumerate() {
            psi[j + 1] = v / h.sqrt();
        }
        fix_sign(&mut psi);
        wavefunctions.push(psi);
    }
    Ok(BoundStates {
        z_nm: profile.z_nm.clone(),
        step_nm: h,
        energies_mev,
        wavefunctions,
    })
}

fn solve_grid(
    potential_mev: &[f64],
    eff_mass: &[f64],
    h_nm: f64,
    n_states: usize,
) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = potential_mev.len();
    let m = n - 2;
    let kin = HBAR2_OVER_2M0_MEV_NM2 / (h_nm * h_nm);
    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m - 1);
    for i in 1..n - 1 {
        let m_minus = 0.5 * (eff_mass[i] + eff_mass[i - 1]);
        let m_plus = 0.5 * (eff_mass[i] + eff_mass[i + 1]);
        diag.push(kin * (1.0 / m_minus + 1.0 / m_plus) + potential_mev[i]);
        if i < n - 2 {
            off.push(-kin / m_plus);
        }
    }
    let t = SymTridiag::new(diag, off);
    let evs = t.lowest_eigenvalues(n_states.min(m));
    let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(evs.len());
    for ev in &evs {
        let v = t.eigenvector(*ev, &vecs);
        vecs.push(v);
    }
    (evs, vecs)
}

/// Insert midpoints: 2n-1 nodes at half the spacing, same endpoints.
fn refine_profile(v: &[f64], m: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = v.len();
    let mut rv = Vec::with_capacity(2 * n - 1);
    let mut rm = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        rv.push(v[i]);
        rm.push(m[i]);
        if i + 1 < n {
            rv.push(0.5 * (v[i] + v[i + 1]));
            rm.push(0.5 * (m[i] + m[i + 1]));
        }
    }
    (rv, rm)
}

fn fix_sign(psi: &mut [f64]) {
    let mut peak = 0usize;
    let mut best = 0.0f64;
    for (i, &x) in psi.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            peak = i;
        }
    }
    if psi[peak] < 0.0 {
        for x in psi.iter_mut() {
            *x = -*x;
        }
    }
}

/// Fill subbands with `ns_cm2` electrons (both spins) at temperature `t_k`.
///
/// T = 0 inverts the piecewise-linear 2D filling law exactly; T > 0 bisects
/// the closed-form Fermi integral to 1e-10 relative on the density.
pub fn fill_subbands(states: BoundStates, ns_cm2: f64, m_eff: f64, t_k: f64) -> SubbandSet {
    let rho = DOS_2D_PER_MASS * m_eff; // meV^-1 cm^-2
    let e = &states.energies_mev;
    let k = e.len();
    let fermi = if ns_cm2 <= 0.0 {
        e[0]
    } else if t_k <= 0.0 {
        let mut prefix = 0.0;
        let mut ef = e[0];
        for j in 1..=k {
            prefix += e[j - 1];
            let cand = (ns_cm2 / rho + prefix) / j as f64;
            if cand >= e[j - 1] && (j == k || cand <= e[j]) {
                ef = cand;
                break;
            }
        }
        ef
    } else {
        let kt = K_BOLTZMANN * t_k / MEV;
        let total = |ef: f64| -> f64 {
            e.iter().map(|&ei| rho * kt * softplus((ef - ei) / kt)).sum()
        };
        let mut lo = e[0] - 60.0 * kt;
        let mut hi = e[k - 1] + ns_cm2 / rho + 60.0 * kt;
        while total(lo) > ns_cm2 {
            lo -= 100.0 * kt;
        }
        while total(hi) < ns_cm2 {
            hi += 100.0 * kt;
        }
        let mut root = 0.5 * (lo + hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let v = total(mid);
            if (v - ns_cm2).abs() <= 1e-10 * ns_cm2 {
                root = mid;
                break;
            }
            if v < ns_cm2 {
                lo = mid;
            } else {
                hi = mid;
            }
            root = 0.5 * (lo + hi);
        }
        root
    };

    let populations_cm2: Vec<f64> = if ns_cm2 <= 0.0 {
        vec![0.0; k]
    } else if t_k <= 0.0 {
        e.iter().map(|&ei| rho * (fermi - ei).max(0.0)).collect()
    } else {
        let kt = K_BOLTZMANN * t_k / MEV;
        e.iter().map(|&ei| rho * kt * softplus((fermi - ei) / kt)).collect()
    };

    SubbandSet {
        states,
        fermi_level_mev: fermi,
        populations_cm2,
    }
}

/// ln(1 + exp(x)) without overflow.
fn softplus(x: f64) -> f64 {
    if x > 30.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Build the intersubband current densities
/// sqrt(S) j_alpha = (e hbar / 2 m*) sqrt(dN_alpha) (psi_i psi_f' - psi_f psi_i')
/// for every pair with positive population difference, ordered by transition
/// energy (ties broken by ascending integral of j^2).
pub fn build_transitions(subbands: &SubbandSet, m_eff: f64) -> TransitionSet {
    let states = &subbands.states;
    let n = states.z_nm.len();
    let h = states.step_nm;
    let k = states.energies_mev.len();
    let pre = E_CHARGE * HBAR / (2.0 * m_eff * M_ELECTRON);

    let derivs: Vec<Vec<f64>> = states
        .wavefunctions
        .iter()
        .map(|psi| {
            (0..n)
                .map(|i| {
                    let prev = if i == 0 { 0.0 } else { psi[i - 1] };
                    let next = if i + 1 == n { 0.0 } else { psi[i + 1] };
                    (next - prev) / (2.0 * h)
                })
                .collect()
        })
        .collect();

    let mut entries: Vec<(Transition, Vec<f64>, f64)> = Vec::new();
    for i in 0..k {
        for f in i + 1..k {
            let dn = (subbands.populations_cm2[i] - subbands.populations_cm2[f]).max(0.0);
            if dn <= 0.0 {
                continue;
            }
            let sqrt_dn = cm2_to_m2(dn).sqrt(); // m^-1
            let psi_i = &states.wavefunctions[i];
            let psi_f = &states.wavefunctions[f];
            // psi psi' is nm^-2; 1e18 converts to m^-2, giving A/m.
            let current: Vec<f64> = (0..n)
                .map(|p| pre * sqrt_dn * (psi_i[p] * derivs[f][p] - psi_f[p] * derivs[i][p]) * 1e18)
                .collect();
            let j2: Vec<f64> = current.iter().map(|x| x * x).collect();
            let strength = trapz(&j2, h);
            entries.push((
                Transition {
                    lower: i,
                    upper: f,
                    energy_mev: states.energies_mev[f] - states.energies_mev[i],
                    delta_n_cm2: dn,
                },
                current,
                strength,
            ));
        }
    }
    entries.sort_by(|a, b| {
        (a.0.energy_mev, a.2)
            .partial_cmp(&(b.0.energy_mev, b.2))
            .unwrap()
    });
    TransitionSet {
        z_nm: states.z_nm.clone(),
        step_nm: h,
        transitions: entries.iter().map(|e| e.0.clone()).collect(),
        currents: entries.into_iter().map(|e| e.1).collect(),
    }
}
