//! Radiative and non-radiative damping of the bright plasmon mode: the
//! angle- and wavevector-parameterized emission kernel, its imaginary part
//! (frequency shift), the Markov electronic rate, the critical angle, and a
//! principal-value Kramers-Kronig quadrature used as an independent check on
//! the closed-form kernel.
//!
//! Wavevectors are passed normalized, k_norm = c k / (sqrt(eps_s) omega_0),
//! so the light cone sits at omega/omega_0 = k_norm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bright-mode parameters: resonance energy, Fermi-golden-rule radiative
/// scale, non-radiative width (all meV) and background dielectric constant.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CouplingParams {
    pub omega0_mev: f64,
    pub gamma0_mev: f64,
    pub gamma_nr_mev: f64,
    pub eps_s: f64,
}

impl CouplingParams {
    pub fn new(omega0_mev: f64, gamma0_mev: f64, gamma_nr_mev: f64, eps_s: f64) -> Result<Self> {
        if !(omega0_mev > 0.0) || !(gamma0_mev >= 0.0) || !(gamma_nr_mev > 0.0) || !(eps_s >= 1.0) {
            return Err(Error::InvalidInput(
                "need omega0 > 0, gamma0 >= 0, gamma_nr > 0, eps_s >= 1".into(),
            ));
        }
        Ok(Self {
            omega0_mev,
            gamma0_mev,
            gamma_nr_mev,
            eps_s,
        })
    }

    /// Quality factor Q = omega_0 / gamma.
    pub fn q_factor(&self) -> f64 {
        self.omega0_mev / self.gamma_nr_mev
    }

    /// Damping ratio g(theta) = Gamma(theta, omega_0) / gamma.
    pub fn damping_ratio(&self, theta_deg: f64) -> Result<f64> {
        Ok(radiative_rate_theta(self, theta_deg, self.omega0_mev)? / self.gamma_nr_mev)
    }
}

/// sin^2(theta)/cos(theta), the angular factor of the emission rate.
pub fn angle_factor(theta_deg: f64) -> Result<f64> {
    if !(0.0..90.0).contains(&theta_deg) {
        return Err(Error::AngleOutOfRange { theta_deg });
    }
    let t = theta_deg.to_radians();
    Ok(t.sin() * t.sin() / t.cos())
}

/// hbar Gamma(theta, omega) = hbar Gamma_0 (omega/omega_0) sin^2(theta)/cos(theta), meV.
///
/// Linear in omega; equals the Fermi-golden-rule value at omega = omega_0.
pub fn radiative_rate_theta(p: &CouplingParams, theta_deg: f64, omega_mev: f64) -> Result<f64> {
    Ok(p.gamma0_mev * (omega_mev / p.omega0_mev) * angle_factor(theta_deg)?)
}

/// hbar Gamma_k(omega) in meV at normalized in-plane wavevector `k_norm`.
///
/// Zero below the light cone; +infinity exactly on it (the kernel diverges
/// there; grid generators keep that line out).
pub fn radiative_rate_k(p: &CouplingParams, k_norm: f64, omega_mev: f64) -> f64 {
    let nu = omega_mev / p.omega0_mev;
    if nu < k_norm {
        0.0
    } else if nu == k_norm {
        f64::INFINITY
    } else {
        p.gamma0_mev * k_norm * k_norm / (nu * nu - k_norm * k_norm).sqrt()
    }
}

/// Frequency shift G_k(omega) = Im[Gamma(omega) - Gamma*(-omega)] in meV:
/// exactly zero in the radiative region, the negative closed form below the
/// light cone, -infinity exactly on it.
pub fn lamb_shift(p: &CouplingParams, k_norm: f64, omega_mev: f64) -> f64 {
    let nu = (omega_mev / p.omega0_mev).abs();
    if nu > k_norm {
        0.0
    } else if nu == k_norm {
        f64::NEG_INFINITY
    } else {
        -p.gamma0_mev * k_norm * k_norm / (k_norm * k_norm - nu * nu).sqrt()
    }
}

/// Markov electronic damping: gamma for omega > 0, zero otherwise. The step
/// is mandatory; a negative-frequency electronic excitation would let the
/// antiresonant terms cancel the damping entirely.
pub fn electronic_rate(p: &CouplingParams, omega_mev: f64) -> f64 {
    if omega_mev > 0.0 {
        p.gamma_nr_mev
    } else {
        0.0
    }
}

/// Angle where the radiative rate equals the non-radiative one,
/// Gamma_0 sin^2(theta)/cos(theta) = gamma, bisected to 1e-6 degrees.
pub fn critical_angle(p: &CouplingParams) -> Result<f64> {
    if !(p.gamma0_mev > 0.0) {
        return Err(Error::InvalidInput("critical angle needs gamma0 > 0".into()));
    }
    let target = p.gamma_nr_mev / p.gamma0_mev;
    let f = |deg: f64| {
        let t = deg.to_radians();
        t.sin() * t.sin() / t.cos() - target
    };
    let mut lo = 0.0f64;
    let mut hi = 90.0f64 - 1e-12;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-7 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed-form Im[Gamma(omega)] of the radiative kernel (meV), the three
/// branches of the dispersion integral over the one-sided spectral density
/// Re Gamma(w') = Gamma_0 k^2 / sqrt(w'^2 - k^2), w' > k (normalized units):
///
///   omega >  k:  (2 G0/pi) k^2/sqrt(nu^2-k^2) * ln[ sqrt((nu+k)/2k) + sqrt((nu-k)/2k) ]
///  |omega| <  k: -(G0/pi) k^2/sqrt(k^2-nu^2) * [ pi/2 + asin(nu/k) ]
///   omega < -k:  (2 G0/pi) k^2/sqrt(nu^2-k^2) * ln[ sqrt((|nu|+k)/2k) - sqrt((|nu|-k)/2k) ]
pub fn im_radiative_kernel(p: &CouplingParams, k_norm: f64, omega_mev: f64) -> Result<f64> {
    let nu = omega_mev / p.omega0_mev;
    let k = k_norm;
    if nu.abs() == k {
        return Err(Error::LightConePoint);
    }
    let g0 = p.gamma0_mev;
    let pi = std::f64::consts::PI;
    if nu > k {
        let root = (nu * nu - k * k).sqrt();
        let l = (((nu + k) / (2.0 * k)).sqrt() + ((nu - k) / (2.0 * k)).sqrt()).ln();
        Ok(2.0 * g0 / pi * k * k / root * l)
    } else if nu.abs() < k {
        let root = (k * k - nu * nu).sqrt();
        Ok(-(g0 / pi) * k * k / root * (pi / 2.0 + (nu / k).asin()))
    } else {
        let a = nu.abs();
        let root = (a * a - k * k).sqrt();
        let l = (((a + k) / (2.0 * k)).sqrt() - ((a - k) / (2.0 * k)).sqrt()).ln();
        Ok(2.0 * g0 / pi * k * k / root * l)
    }
}

/// Kramers-Kronig oracle for Im[Gamma]: principal-value quadrature
///   Im Gamma(omega) = (1/pi) P Int dw' Re Gamma(w') / (omega - w')
/// over the radiative support w' in (k, Lambda] with Lambda = 50 omega_0
/// (scaled up if k approaches it) plus the analytic sqrt-tail of the
/// truncated part expanded to 1/Lambda^5. The substitution w' = k cosh(s)
/// removes the inverse-sqrt edge singularity; the pole is handled by a
/// symmetric two-sided panel on which the principal value is regular.
///
/// This routine is the independent check on `im_radiative_kernel` and
/// `lamb_shift`; it shares no algebra with them.
pub fn kk_im_radiative_kernel(
    p: &CouplingParams,
    k_norm: f64,
    omega_mev: f64,
    rel_tol: f64,
) -> Result<f64> {
    let k = k_norm;
    let nu = omega_mev / p.omega0_mev;
    if nu.abs() == k {
        return Err(Error::LightConePoint);
    }
    let lambda = 50.0_f64.max(8.0 * k).max(8.0 * nu.abs());
    let s_max = acosh(lambda / k);
    let g = |s: f64| 1.0 / (nu - k * s.cosh());

    let mut total = 0.0f64;
    if nu > k && nu < lambda {
        let s0 = acosh(nu / k);
        let d = 0.5 * s0.min(s_max - s0);
        // Symmetric panel around the pole: the odd part integrates to zero in
        // the principal-value sense, the even part is regular.
        let sym = |u: f64| {
            if u == 0.0 {
                s0.cosh() / (k * s0.sinh() * s0.sinh())
            } else {
                g(s0 + u) + g(s0 - u)
            }
        };
        total += simpson_doubling(&sym, 0.0, d, rel_tol)?;
        total += simpson_doubling(&g, 0.0, s0 - d, rel_tol)?;
        total += simpson_doubling(&g, s0 + d, s_max, rel_tol)?;
    } else {
        total += simpson_doubling(&g, 0.0, s_max, rel_tol)?;
    }

    // Truncated tail of Re Gamma/(nu - w') for w' > Lambda, expanded in
    // 1/Lambda (sqrt-tail of the spectral density).
    let (l1, l2, l3, l4, l5) = (
        lambda,
        lambda * lambda,
        lambda.powi(3),
        lambda.powi(4),
        lambda.powi(5),
    );
    let k2 = k * k;
    let tail = -(1.0 / l1
        + nu / (2.0 * l2)
        + (nu * nu + k2 / 2.0) / (3.0 * l3)
        + (nu.powi(3) + nu * k2 / 2.0) / (4.0 * l4)
        + (nu.powi(4) + nu * nu * k2 / 2.0 + 3.0 * k2 * k2 / 8.0) / (5.0 * l5));

    let pi = std::f64::consts::PI;
    Ok(p.gamma0_mev * k * k / pi * (total + tail))
}

/// Frequency shift from the quadrature route:
/// G(omega) = Im Gamma(omega) + Im Gamma(-omega).
pub fn kk_lamb_shift(
    p: &CouplingParams,
    k_norm: f64,
    omega_mev: f64,
    rel_tol: f64,
) -> Result<f64> {
    Ok(kk_im_radiative_kernel(p, k_norm, omega_mev, rel_tol)?
        + kk_im_radiative_kernel(p, k_norm, -omega_mev, rel_tol)?)
}

fn acosh(x: f64) -> f64 {
    (x + (x * x - 1.0).sqrt()).ln()
}

/// Composite Simpson with panel doubling until two consecutive levels agree
/// to `rel_tol`; errors out if the refinement stalls.
fn simpson_doubling<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let mut n = 64usize;
    let mut prev = simpson(f, a, b, n);
    loop {
        n *= 2;
        let cur = simpson(f, a, b, n);
        let delta = (cur - prev).abs();
        if delta <= rel_tol * cur.abs().max(1e-30) {
            return Ok((16.0 * cur - prev) / 15.0);
        }
        if n >= 1 << 21 {
            return Err(Error::QuadratureNotConverged {
                delta,
                tol: rel_tol * cur.abs().max(1e-30),
            });
        }
        prev = cur;
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> CouplingParams {
        CouplingParams::new(100.0, 12.0, 8.0, 12.9).unwrap()
    }

    #[test]
    fn angle_rate_basics() {
        let p = params();
        assert_eq!(radiative_rate_theta(&p, 0.0, 250.0).unwrap(), 0.0);
        let v = radiative_rate_theta(&p, 45.0, 100.0).unwrap();
        assert!((v - 12.0 / 2.0_f64.sqrt()).abs() < 1e-12);
        let a = radiative_rate_theta(&p, 30.0, 200.0).unwrap();
        let b = radiative_rate_theta(&p, 30.0, 100.0).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-12);
        assert!(matches!(
            radiative_rate_theta(&p, 90.0, 100.0),
            Err(Error::AngleOutOfRange { .. })
        ));
        assert!(matches!(
            radiative_rate_theta(&p, -1.0, 100.0),
            Err(Error::AngleOutOfRange { .. })
        ));
    }

    #[test]
    fn k_rate_light_cone() {
        let p = params();
        assert_eq!(radiative_rate_k(&p, 0.0, 50.0), 0.0);
        assert_eq!(radiative_rate_k(&p, 1.5, 100.0), 0.0); // below cone
        assert!(radiative_rate_k(&p, 1.0, 100.0).is_infinite());
        assert!(radiative_rate_k(&p, 0.5, 100.0) > 0.0);
    }

    /// gamma_k(k, w) equals gamma_theta at sin(theta) = c k / (sqrt(eps) w).
    #[test]
    fn k_and_theta_parameterizations_agree() {
        let p = params();
        for k in [0.05, 0.2, 0.5, 0.8, 0.95] {
            for nu in [1.001_f64, 1.1, 1.7, 3.0, 10.0] {
                let w = nu * p.omega0_mev;
                let sin_t = k / nu;
                if sin_t >= 1.0 {
                    continue;
                }
                let theta = sin_t.asin().to_degrees();
                let a = radiative_rate_k(&p, k, w);
                let b = radiative_rate_theta(&p, theta, w).unwrap();
                assert!((a - b).abs() <= 1e-12 * b, "k={k} nu={nu}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lamb_shift_regions() {
        let p = params();
        // Radiative region: exactly zero.
        assert_eq!(lamb_shift(&p, 0.5, 100.0), 0.0);
        assert_eq!(lamb_shift(&p, 0.5, -100.0), 0.0);
        // omega = 0: -Gamma0 * k.
        let g = lamb_shift(&p, 0.7, 0.0);
        assert!((g + p.gamma0_mev * 0.7).abs() < 1e-12);
        // Below the cone: strictly negative.
        for nu in [0.1, 0.3, 0.6] {
            assert!(lamb_shift(&p, 0.7, nu * 100.0) < 0.0);
        }
        assert!(lamb_shift(&p, 0.7, 70.0).is_infinite());
    }

    #[test]
    fn electronic_rate_step() {
        let p = params();
        assert_eq!(electronic_rate(&p, 100.0), 8.0);
        assert_eq!(electronic_rate(&p, -100.0), 0.0);
        assert_eq!(electronic_rate(&p, 0.0), 0.0);
        assert_eq!(electronic_rate(&p, 1e-9), 8.0);
    }

    /// Independent scalar root-find oracle: Gamma_0 = gamma gives
    /// theta_c = acos((sqrt(5)-1)/2) = 51.827292 deg.
    #[test]
    fn critical_angle_equal_rates() {
        let p = CouplingParams::new(100.0, 8.0, 8.0, 12.9).unwrap();
        let th = critical_angle(&p).unwrap();
        let golden = ((5.0_f64.sqrt() - 1.0) / 2.0).acos().to_degrees();
        assert!((th - golden).abs() < 1e-6, "{th} vs {golden}");
        assert!((th - 51.827_292_372_987_7).abs() < 1e-5);
    }

    #[test]
    fn critical_angle_limits_and_monotonicity() {
        let strong = CouplingParams::new(100.0, 8000.0, 8.0, 12.9).unwrap();
        let weak = CouplingParams::new(100.0, 0.008, 8.0, 12.9).unwrap();
        let th_strong = critical_angle(&strong).unwrap();
        let th_weak = critical_angle(&weak).unwrap();
        assert!(th_strong < 3.0, "{th_strong}");
        assert!(th_weak > 87.0, "{th_weak}");
        let mut last = 90.0;
        for g0 in [0.1, 1.0, 10.0, 100.0] {
            let p = CouplingParams::new(100.0, g0, 8.0, 12.9).unwrap();
            let th = critical_angle(&p).unwrap();
            assert!(th < last);
            last = th;
        }
    }

    #[test]
    fn rate_increases_with_angle() {
        let p = params();
        let mut last = 0.0;
        for th in [5.0, 20.0, 45.0, 70.0, 85.0, 89.0] {
            let v = radiative_rate_theta(&p, th, 100.0).unwrap();
            assert!(v > last);
            last = v;
        }
    }

    /// Quadrature vs closed form in all three branches.
    #[test]
    fn kk_oracle_matches_analytic_branches() {
        let p = params();
        let k = 0.8;
        let cases: Vec<f64> = vec![
            // radiative, above the cone
            0.9, 1.0, 1.3, 2.0, 5.0, 20.0, // in units of k below
        ];
        for scale in cases {
            let nu = scale * k * 1.25; // spread over nu > k
            if nu <= k {
                continue;
            }
            let w = nu * p.omega0_mev;
            let got = kk_im_radiative_kernel(&p, k, w, 1e-11).unwrap();
            let want = im_radiative_kernel(&p, k, w).unwrap();
            assert!(
                (got - want).abs() <= 1e-5 * want.abs(),
                "above cone nu={nu}: {got} vs {want}"
            );
        }
        for nu in [-0.7, -0.3, 0.0, 0.35, 0.72] {
            let w = nu * p.omega0_mev;
            let got = kk_im_radiative_kernel(&p, k, w, 1e-11).unwrap();
            let want = im_radiative_kernel(&p, k, w).unwrap();
            assert!(
                (got - want).abs() <= 1e-5 * want.abs(),
                "inside cone nu={nu}: {got} vs {want}"
            );
        }
        for nu in [-1.1, -2.0, -6.0] {
            let w = nu * p.omega0_mev;
            let got = kk_im_radiative_kernel(&p, k, w, 1e-11).unwrap();
            let want = im_radiative_kernel(&p, k, w).unwrap();
            assert!(
                (got - want).abs() <= 1e-5 * want.abs().max(1e-12),
                "below -cone nu={nu}: {got} vs {want}"
            );
        }
    }

    /// Odd symmetry of Im Gamma in the radiative region.
    #[test]
    fn kk_odd_symmetry_radiative() {
        let p = params();
        let k = 0.6;
        for nu in [0.9, 1.4, 3.0] {
            let plus = kk_im_radiative_kernel(&p, k, nu * 100.0, 1e-11).unwrap();
            let minus = kk_im_radiative_kernel(&p, k, -nu * 100.0, 1e-11).unwrap();
            assert!(
                (plus + minus).abs() <= 1e-6 * plus.abs(),
                "nu={nu}: {plus} vs {minus}"
            );
        }
    }

    /// Quadrature shift vs the closed form below the cone, and exact zero
    /// above it.
    #[test]
    fn kk_shift_matches_closed_form() {
        let p = params();
        let k = 0.9;
        for nu in [0.15, 0.45, 0.8] {
            let got = kk_lamb_shift(&p, k, nu * 100.0, 1e-11).unwrap();
            let want = lamb_shift(&p, k, nu * 100.0);
            assert!(
                (got - want).abs() <= 1e-4 * want.abs(),
                "nu={nu}: {got} vs {want}"
            );
        }
        for nu in [1.2, 2.5] {
            let got = kk_lamb_shift(&p, k, nu * 100.0, 1e-11).unwrap();
            let re = radiative_rate_k(&p, k, nu * 100.0);
            assert!(got.abs() <= 1e-6 * re, "nu={nu}: shift {got} vs Re {re}");
        }
    }

    #[test]
    fn quadrature_can_report_non_convergence() {
        let p = params();
        match kk_im_radiative_kernel(&p, 0.8, 150.0, 1e-18) {
            Err(Error::QuadratureNotConverged { .. }) => {}
            other => panic!("expected QuadratureNotConverged, got {other:?}"),
        }
    }

    #[test]
    fn light_cone_point_rejected() {
        let p = params();
        assert!(matches!(
            im_radiative_kernel(&p, 0.5, 50.0),
            Err(Error::LightConePoint)
        ));
        assert!(matches!(
            kk_im_radiative_kernel(&p, 0.5, 50.0, 1e-9),
            Err(Error::LightConePoint)
        ));
    }
}
