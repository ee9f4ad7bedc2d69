//! Input-output scattering of the bright plasmon: the generalized port
//! matrix U(k, omega), transmission/reflection/absorptivity spectra in four
//! model variants, peak-value curves versus the damping ratio, and half-
//! maximum frequencies against their Markov references.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{angle_factor, CouplingParams};
use crate::error::{Error, Result};

/// Approximation switches.
///
/// `Full` keeps the antiresonant factor x = 2 omega_0/(omega_0 + omega) and
/// the frequency-linear radiative rate. `Rwa` sets x = 1 but keeps the rate
/// frequency-linear; `MarkovRwa` additionally freezes the rate at its
/// resonance value. `Mirror` is the full model with the two photonic ports
/// replaced by a single port of rate Gamma(theta, omega).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelVariant {
    Full,
    Rwa,
    MarkovRwa,
    Mirror,
}

impl std::str::FromStr for ModelVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(Self::Full),
            "rwa" => Ok(Self::Rwa),
            "markov" => Ok(Self::MarkovRwa),
            "mirror" => Ok(Self::Mirror),
            other => Err(format!(
                "unknown variant '{other}' (expected full|rwa|markov|mirror)"
            )),
        }
    }
}

impl std::fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Full => "full",
            Self::Rwa => "rwa",
            Self::MarkovRwa => "markov",
            Self::Mirror => "mirror",
        };
        write!(f, "{s}")
    }
}

/// One scattering problem: resonance energy, non-radiative width and
/// on-resonance radiative width Gamma(theta, omega_0), all in the same unit.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScatterProblem {
    pub omega0: f64,
    pub gamma_nr: f64,
    pub gamma_res: f64,
}

impl ScatterProblem {
    /// From microscopic parameters at a propagation angle.
    pub fn from_angle(p: &CouplingParams, theta_deg: f64) -> Result<Self> {
        Ok(Self {
            omega0: p.omega0_mev,
            gamma_nr: p.gamma_nr_mev,
            gamma_res: p.gamma0_mev * angle_factor(theta_deg)?,
        })
    }

    /// Normalized problem from the damping ratio g = Gamma/gamma and the
    /// quality factor Q = omega_0/gamma; omega_0 = 1.
    pub fn from_ratios(g: f64, q: f64) -> Result<Self> {
        if !(g >= 0.0) || !(q > 0.0) {
            return Err(Error::InvalidInput("need g >= 0 and Q > 0".into()));
        }
        Ok(Self {
            omega0: 1.0,
            gamma_nr: 1.0 / q,
            gamma_res: g / q,
        })
    }

    pub fn damping_ratio(&self) -> f64 {
        self.gamma_res / self.gamma_nr
    }

    pub fn q_factor(&self) -> f64 {
        self.omega0 / self.gamma_nr
    }

    /// Radiative rate entering the matrix at frequency `omega`.
    fn rate(&self, omega: f64, variant: ModelVariant) -> f64 {
        match variant {
            ModelVariant::MarkovRwa => self.gamma_res,
            _ => self.gamma_res * omega / self.omega0,
        }
    }

    fn antiresonant_factor(&self, omega: f64, variant: ModelVariant) -> f64 {
        match variant {
            ModelVariant::Rwa | ModelVariant::MarkovRwa => 1.0,
            _ => 2.0 * self.omega0 / (self.omega0 + omega),
        }
    }
}

/// Port scattering matrix at one frequency. Ports are ordered
/// (photon-up, photon-down, electron); the mirror variant has
/// (photon, electron).
#[derive(Debug, Clone)]
pub struct ScatteringMatrix {
    pub ports: usize,
    u: Vec<Complex64>,
}

impl ScatteringMatrix {
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.u[row * self.ports + col]
    }

    /// max_j | sum_i U_ij conj(U_ij') - delta | over column pairs.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.ports;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    s += self.get(i, a) * self.get(i, b).conj();
                }
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// max |U_ij - U_ji| (reciprocity).
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.ports;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }
}

/// Build U(omega): U_ij = delta_ij + x sqrt(kappa_i kappa_j) / D with
/// D = i(omega - omega_0) - x (gamma + Gamma)/2, port rates
/// (Gamma/2, Gamma/2, gamma), or (Gamma, gamma) for the mirror.
pub fn build_u(prob: &ScatterProblem, omega: f64, variant: ModelVariant) -> Result<ScatteringMatrix> {
    if !(omega > 0.0) {
        return Err(Error::InvalidInput("omega must be positive".into()));
    }
    let x = prob.antiresonant_factor(omega, variant);
    let big_gamma = prob.rate(omega, variant);
    let rates: Vec<f64> = match variant {
        ModelVariant::Mirror => vec![big_gamma, prob.gamma_nr],
        _ => vec![0.5 * big_gamma, 0.5 * big_gamma, prob.gamma_nr],
    };
    let d = Complex64::new(
        -x * (prob.gamma_nr + big_gamma) / 2.0,
        omega - prob.omega0,
    );
    let n = rates.len();
    let mut u = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut v = x * (rates[i] * rates[j]).sqrt() / d;
            if i == j {
                v += 1.0;
            }
            u[i * n + j] = v;
        }
    }
    Ok(ScatteringMatrix { ports: n, u })
}

/// Frequency-gridded optical coefficients.
///
/// For the mirror variant `t` is identically zero and `r` is the single-port
/// reflection amplitude. Absorptivity comes from the closed form
/// x^2 gamma Gamma / (2 |D|^2) (doubled for the mirror) and is checked in
/// debug builds against 1 - |t|^2 - |r|^2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralTable {
    pub omega_over_omega0: Vec<f64>,
    pub t: Vec<Complex64>,
    pub r: Vec<Complex64>,
    pub alpha: Vec<f64>,
    pub variant: ModelVariant,
    pub g: f64,
    pub q_factor: f64,
}

/// Default frequency grid (units of omega_0): 4001 points, log-symmetric
/// about 1 over [1/50, 50]; the middle point is exactly 1.
pub fn default_omega_grid() -> Vec<f64> {
    log_symmetric_grid(50.0, 4001)
}

pub fn log_symmetric_grid(span: f64, n: usize) -> Vec<f64> {
    let a = span.ln();
    (0..n)
        .map(|i| (-a + 2.0 * a * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn optical_coefficients(
    prob: &ScatterProblem,
    omega_grid: &[f64],
    variant: ModelVariant,
) -> Result<SpectralTable> {
    let mut last = 0.0;
    for &w in omega_grid {
        if !(w > 0.0) || w <= last {
            return Err(Error::InvalidInput(
                "omega grid must be positive and strictly increasing".into(),
            ));
        }
        last = w;
    }
    let n = omega_grid.len();
    let mut t = Vec::with_capacity(n);
    let mut r = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    for &nu in omega_grid {
        let omega = nu * prob.omega0;
        let u = build_u(prob, omega, variant)?;
        let x = prob.antiresonant_factor(omega, variant);
        let big_gamma = prob.rate(omega, variant);
        let d2 = (omega - prob.omega0).powi(2)
            + x * x * (prob.gamma_nr + big_gamma).powi(2) / 4.0;
        let (tv, rv, av) = match variant {
            ModelVariant::Mirror => {
                let rv = u.get(0, 0);
                let av = x * x * prob.gamma_nr * big_gamma / d2;
                (Complex64::new(0.0, 0.0), rv, av)
            }
            _ => {
                let tv = u.get(0, 0);
                let rv = u.get(1, 0);
                let av = x * x * prob.gamma_nr * big_gamma / (2.0 * d2);
                (tv, rv, av)
            }
        };
        debug_assert!(
            (av - (1.0 - tv.norm_sqr() - rv.norm_sqr())).abs() < 1e-12,
            "closed-form alpha disagrees with 1-|t|^2-|r|^2"
        );
        t.push(tv);
        r.push(rv);
        alpha.push(av);
    }
    Ok(SpectralTable {
        omega_over_omega0: omega_grid.to_vec(),
        t,
        r,
        alpha,
        variant,
        g: prob.damping_ratio(),
        q_factor: prob.q_factor(),
    })
}

/// Peak absorptivity and reflectivity versus the damping ratio, with the
/// weak-coupling references 2g and g^2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeakCurves {
    pub g: Vec<f64>,
    pub peak_alpha: Vec<f64>,
    pub peak_r2: Vec<f64>,
    pub ref_2g: Vec<f64>,
    pub ref_g2: Vec<f64>,
}

pub fn peak_curves(q: f64, g_grid: &[f64], variant: ModelVariant) -> Result<PeakCurves> {
    let grid = default_omega_grid();
    let mut out = PeakCurves {
        g: g_grid.to_vec(),
        peak_alpha: Vec::with_capacity(g_grid.len()),
        peak_r2: Vec::with_capacity(g_grid.len()),
        ref_2g: g_grid.iter().map(|g| 2.0 * g).collect(),
        ref_g2: g_grid.iter().map(|g| g * g).collect(),
    };
    for &g in g_grid {
        let prob = ScatterProblem::from_ratios(g, q)?;
        let table = optical_coefficients(&prob, &grid, variant)?;
        let pa = table.alpha.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let pr = table
            .r
            .iter()
            .map(|c| c.norm_sqr())
            .fold(f64::NEG_INFINITY, f64::max);
        out.peak_alpha.push(pa);
        out.peak_r2.push(pr);
    }
    Ok(out)
}

/// Which spectrum the half-maximum scan follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeakQuantity {
    Absorptivity,
    Reflectivity,
}

/// Half-maximum frequencies of one spectrum plus the Markov reference lines
/// 1 -+ (gamma + Gamma)/(2 omega_0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfMaxRow {
    pub ratio: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub markov_minus: f64,
    pub markov_plus: f64,
}

/// Scan Gamma(theta, omega_0)/omega_0 at fixed Q, locating the half-maximum
/// frequencies of the absorptivity or reflectivity spectrum by bracketing
/// bisection to 1e-8 (units of omega_0).
pub fn half_max_frequencies(
    q: f64,
    ratio_grid: &[f64],
    which: PeakQuantity,
    variant: ModelVariant,
) -> Result<Vec<HalfMaxRow>> {
    let mut rows = Vec::with_capacity(ratio_grid.len());
    for &ratio in ratio_grid {
        let g = ratio * q;
        let prob = ScatterProblem::from_ratios(g, q)?;
        let f = |nu: f64| -> f64 { spectrum_value(&prob, nu, which, variant) };
        let grid = default_omega_grid();
        let values: Vec<f64> = grid.iter().map(|&nu| f(nu)).collect();
        check_unimodal(&values)?;
        let ipk = argmax(&values);
        let (lo, hi) = (
            grid[ipk.saturating_sub(1)],
            grid[(ipk + 1).min(grid.len() - 1)],
        );
        let nu_pk = golden_max(&f, lo, hi);
        let peak = f(nu_pk);
        let half = 0.5 * peak;

        // Lower side: march out to the grid edge looking for a bracket.
        let omega_minus = bisect_down(&f, half, grid[0], nu_pk, "lower")?;
        let omega_plus = bisect_up(&f, half, nu_pk, grid[grid.len() - 1], "upper")?;
        let hw = (prob.gamma_nr + prob.gamma_res) / 2.0;
        rows.push(HalfMaxRow {
            ratio,
            omega_minus,
            omega_plus,
            markov_minus: 1.0 - hw,
            markov_plus: 1.0 + hw,
        });
    }
    Ok(rows)
}

fn spectrum_value(prob: &ScatterProblem, nu: f64, which: PeakQuantity, variant: ModelVariant) -> f64 {
    let omega = nu * prob.omega0;
    let x = prob.antiresonant_factor(omega, variant);
    let big_gamma = prob.rate(omega, variant);
    let d2 = (omega - prob.omega0).powi(2) + x * x * (prob.gamma_nr + big_gamma).powi(2) / 4.0;
    match which {
        PeakQuantity::Absorptivity => match variant {
            ModelVariant::Mirror => x * x * prob.gamma_nr * big_gamma / d2,
            _ => x * x * prob.gamma_nr * big_gamma / (2.0 * d2),
        },
        PeakQuantity::Reflectivity => match variant {
            ModelVariant::Mirror => {
                ((omega - prob.omega0).powi(2) + x * x * (big_gamma - prob.gamma_nr).powi(2) / 4.0)
                    / d2
            }
            _ => x * x * big_gamma * big_gamma / (4.0 * d2),
        },
    }
}

fn check_unimodal(values: &[f64]) -> Result<()> {
    let peak = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut maxima = 0usize;
    for i in 1..values.len() - 1 {
        if values[i] > values[i - 1] && values[i] > values[i + 1] && values[i] > 1e-6 * peak {
            maxima += 1;
        }
    }
    if maxima > 1 {
        return Err(Error::InvalidInput(format!(
            "spectrum has {maxima} local maxima; half-max scan needs a unimodal spectrum"
        )));
    }
    Ok(())
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..200 {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    0.5 * (a + b)
}

fn bisect_down<F: Fn(f64) -> f64>(
    f: &F,
    half: f64,
    edge: f64,
    peak_nu: f64,
    side: &'static str,
) -> Result<f64> {
    if f(edge) >= half {
        return Err(Error::HalfMaxNotBracketed { side });
    }
    let mut lo = edge;
    let mut hi = peak_nu;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < half {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn bisect_up<F: Fn(f64) -> f64>(
    f: &F,
    half: f64,
    peak_nu: f64,
    edge: f64,
    side: &'static str,
) -> Result<f64> {
    if f(edge) >= half {
        return Err(Error::HalfMaxNotBracketed { side });
    }
    let mut lo = peak_nu;
    let mut hi = edge;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < half {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
