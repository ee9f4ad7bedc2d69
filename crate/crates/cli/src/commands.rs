//! Implementations of the subcommands: resolve parameters, run the physics,
//! emit tables (and optional SVG plots).

use std::path::Path;

use msp_core::coupling::{critical_angle, radiative_rate_theta, CouplingParams};
use msp_core::eigenstates::{default_map_grids, dispersion_map};
use msp_core::plasmons::{
    absorption_spectrum, bright_gamma0, build_coupling_matrix, diagonalize_bogoliubov,
    mode_gamma_mev,
};
use msp_core::scattering::{
    half_max_frequencies, log_symmetric_grid, optical_coefficients, peak_curves, ModelVariant,
    PeakQuantity, ScatterProblem,
};
use msp_core::thermal::{emitted_spectrum, ThermalScenario};
use msp_core::wellbands::{build_transitions, fill_subbands, solve_subbands};
use msp_core::{PlasmonModeSet, SubbandSet, TransitionSet};

use crate::config::WellConfig;
use crate::output::{fnum, inum, OutputFormat, TableDoc};
use crate::svg::{heatmap, line_chart, Series};
use crate::CliError;

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64)
        .collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

/// Microscopic chain: solve, fill, couple, diagonalize.
fn run_chain(
    cfg: &WellConfig,
    n_states: usize,
) -> Result<(SubbandSet, TransitionSet, PlasmonModeSet), CliError> {
    let profile = cfg.profile();
    let states = solve_subbands(&profile, n_states)?;
    let subbands = fill_subbands(states, cfg.ns_cm2, cfg.eff_mass, cfg.temperature_k);
    let transitions = build_transitions(&subbands, cfg.eff_mass);
    if transitions.transitions.is_empty() {
        return Err(CliError::Config(
            "no occupied transitions: Ns_cm2 too small for this well".into(),
        ));
    }
    let cm = build_coupling_matrix(&transitions, cfg.eps_s);
    let modes = diagonalize_bogoliubov(&cm, &transitions)?;
    Ok((subbands, transitions, modes))
}

pub fn subbands(
    cfg: &WellConfig,
    n_states: usize,
    out: &Path,
    format: OutputFormat,
) -> Result<(), CliError> {
    let profile = cfg.profile();
    let states = solve_subbands(&profile, n_states)?;
    let subbands = fill_subbands(states, cfg.ns_cm2, cfg.eff_mass, cfg.temperature_k);
    let transitions = build_transitions(&subbands, cfg.eff_mass);

    let k = subbands.states.energies_mev.len();
    let mut wf = TableDoc::new(
        "subbands",
        std::iter::once("z_nm")
            .chain((1..=k).map(|i| {
                let s: &'static str = Box::leak(format!("psi_{i}").into_boxed_str());
                s
            }))
            .collect(),
    );
    for (key, value) in cfg.meta() {
        wf.meta_kv(&key, value);
    }
    wf.meta_kv("n_states", inum(n_states));
    wf.meta_kv("fermi_level_meV", fnum(subbands.fermi_level_mev));
    for (i, e) in subbands.states.energies_mev.iter().enumerate() {
        wf.meta_kv(&format!("E_{}_meV", i + 1), fnum(*e));
        wf.meta_kv(&format!("dN_{}_cm2", i + 1), fnum(subbands.populations_cm2[i]));
    }
    for (ip, z) in subbands.states.z_nm.iter().enumerate() {
        let mut row = vec![fnum(*z)];
        for psi in &subbands.states.wavefunctions {
            row.push(fnum(psi[ip]));
        }
        wf.push(row);
    }
    wf.write(out, "wavefunctions", format)?;

    let mut tr = TableDoc::new("subbands", vec!["i", "f", "w_meV", "dN_cm2", "intJ"]);
    for (key, value) in cfg.meta() {
        tr.meta_kv(&key, value);
    }
    tr.meta_kv("intJ_unit", "A (current of sqrt(S) j_alpha integrated over z)".into());
    for (a, t) in transitions.transitions.iter().enumerate() {
        tr.push(vec![
            inum(t.lower + 1),
            inum(t.upper + 1),
            fnum(t.energy_mev),
            fnum(t.delta_n_cm2),
            fnum(transitions.integrated_current(a)),
        ]);
    }
    tr.write(out, "transitions", format)?;
    Ok(())
}

pub fn plasmons(
    cfg: &WellConfig,
    n_states: usize,
    broadening_mev: f64,
    out: &Path,
    format: OutputFormat,
    svg: bool,
) -> Result<(), CliError> {
    if !(broadening_mev > 0.0) {
        return Err(CliError::Config("broadening-mev must be positive".into()));
    }
    let (_, transitions, modes) = run_chain(cfg, n_states)?;

    let mut md = TableDoc::new("plasmons", vec!["n", "omega_meV", "weight", "gamma0_meV"]);
    for (key, value) in cfg.meta() {
        md.meta_kv(&key, value);
    }
    md.meta_kv("bright_index", inum(modes.bright_index + 1));
    md.meta_kv("omega0_meV", fnum(modes.omega0_mev()));
    md.meta_kv("bright_gamma0_meV", fnum(bright_gamma0(&modes, cfg.eps_s)));
    for n in 0..modes.frequencies_mev.len() {
        md.push(vec![
            inum(n + 1),
            fnum(modes.frequencies_mev[n]),
            fnum(modes.weights[n]),
            fnum(mode_gamma_mev(&modes, n, cfg.eps_s)),
        ]);
    }
    md.write(out, "modes", format)?;

    let wmax = modes
        .frequencies_mev
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    let grid = linspace(1.0, 1.6 * wmax, 2001);
    let spec = absorption_spectrum(&transitions, &modes, broadening_mev, &grid)?;
    let mut ab = TableDoc::new("plasmons", vec!["omega_meV", "A_sp", "A_msp"]);
    for (key, value) in cfg.meta() {
        ab.meta_kv(&key, value);
    }
    ab.meta_kv("broadening_meV", fnum(broadening_mev));
    ab.meta_kv(
        "normalization",
        "unit-area Lorentzians weighted by |int j|^2/w over the single-particle total".into(),
    );
    for i in 0..grid.len() {
        ab.push(vec![
            fnum(spec.omega_mev[i]),
            fnum(spec.single_particle[i]),
            fnum(spec.plasmon[i]),
        ]);
    }
    ab.write(out, "absorption", format)?;

    if svg {
        let chart = line_chart(
            "Intersubband absorption: bare vs dipole-dipole coupled",
            "omega (meV)",
            "absorption (1/meV)",
            &[
                Series {
                    label: "single particle",
                    color: "#1f77b4",
                    dashed: false,
                    points: grid.iter().cloned().zip(spec.single_particle.iter().cloned()).collect(),
                },
                Series {
                    label: "multisubband plasmon",
                    color: "#d62728",
                    dashed: false,
                    points: grid.iter().cloned().zip(spec.plasmon.iter().cloned()).collect(),
                },
            ],
        );
        std::fs::write(out.join("absorption.svg"), chart).map_err(CliError::Io)?;
    }
    Ok(())
}

pub struct GammaArgs {
    pub gamma0_mev: Option<f64>,
    pub omega0_mev: f64,
    pub gamma_mev: f64,
    pub theta_points: usize,
}

pub fn gamma(
    cfg: Option<&WellConfig>,
    args: &GammaArgs,
    n_states: usize,
    out: &Path,
    format: OutputFormat,
    svg: bool,
) -> Result<(), CliError> {
    let (gamma0, omega0, eps_s, meta): (f64, f64, f64, Vec<(String, String)>) = match (cfg, args.gamma0_mev) {
        (Some(cfg), None) => {
            let (_, _, modes) = run_chain(cfg, n_states)?;
            (
                bright_gamma0(&modes, cfg.eps_s),
                modes.omega0_mev(),
                cfg.eps_s,
                cfg.meta(),
            )
        }
        (None, Some(g0)) => (g0, args.omega0_mev, 12.9, Vec::new()),
        _ => {
            return Err(CliError::Config(
                "provide exactly one of --config or --gamma0-mev".into(),
            ))
        }
    };
    let params = CouplingParams::new(omega0, gamma0, args.gamma_mev, eps_s)?;
    let thetas = linspace(0.0, 89.0, args.theta_points);
    let mut doc = TableDoc::new("gamma", vec!["theta_deg", "gamma_meV"]);
    for (key, value) in meta {
        doc.meta_kv(&key, value);
    }
    doc.meta_kv("omega0_meV", fnum(omega0));
    doc.meta_kv("gamma0_meV", fnum(gamma0));
    doc.meta_kv("gamma_nr_meV", fnum(args.gamma_mev));
    let mut pts = Vec::with_capacity(thetas.len());
    for &th in &thetas {
        let v = radiative_rate_theta(&params, th, omega0)?;
        doc.push(vec![fnum(th), fnum(v)]);
        pts.push((th, v));
    }
    doc.write(out, "gamma_vs_theta", format)?;
    if svg {
        let chart = line_chart(
            "Radiative rate vs propagation angle",
            "theta (deg)",
            "hbar Gamma(theta, omega0) (meV)",
            &[Series {
                label: "Gamma(theta)",
                color: "#1f77b4",
                dashed: false,
                points: pts,
            }],
        );
        std::fs::write(out.join("gamma_vs_theta.svg"), chart).map_err(CliError::Io)?;
    }
    Ok(())
}

pub fn critical_angle_sweep(
    cfg: &WellConfig,
    gamma_mev: f64,
    ns_from: f64,
    ns_to: f64,
    ns_points: usize,
    n_states: usize,
    out: &Path,
    format: OutputFormat,
) -> Result<(), CliError> {
    if !(ns_from > 0.0 && ns_to > ns_from) {
        return Err(CliError::Config("need 0 < ns-from < ns-to".into()));
    }
    let mut doc = TableDoc::new("critical-angle", vec!["Ns_cm2", "theta_c_deg"]);
    for (key, value) in cfg.meta() {
        doc.meta_kv(&key, value);
    }
    doc.meta_kv("gamma_nr_meV", fnum(gamma_mev));
    for ns in logspace(ns_from, ns_to, ns_points) {
        let swept = cfg.with_density(ns);
        let (_, _, modes) = run_chain(&swept, n_states)?;
        let params = CouplingParams::new(
            modes.omega0_mev(),
            bright_gamma0(&modes, cfg.eps_s),
            gamma_mev,
            cfg.eps_s,
        )?;
        doc.push(vec![fnum(ns), fnum(critical_angle(&params)?)]);
    }
    doc.write(out, "critical_angle", format)?;
    Ok(())
}

pub struct SpectrumArgs {
    pub g: Option<f64>,
    pub q: Option<f64>,
    pub theta_deg: Option<f64>,
    pub omega0_mev: f64,
    pub gamma_mev: f64,
    pub gamma0_mev: Option<f64>,
    pub variant: ModelVariant,
    pub points: usize,
    pub span: f64,
}

fn resolve_problem(a: &SpectrumArgs) -> Result<(ScatterProblem, Vec<(String, String)>), CliError> {
    match (a.theta_deg, a.g, a.q) {
        (Some(theta), _, _) => {
            let g0 = a.gamma0_mev.ok_or_else(|| {
                CliError::Config("--theta-deg needs --gamma0-mev".into())
            })?;
            let params = CouplingParams::new(a.omega0_mev, g0, a.gamma_mev, 12.9)?;
            let prob = ScatterProblem::from_angle(&params, theta)?;
            Ok((
                prob,
                vec![
                    ("theta_deg".into(), format!("{theta}")),
                    ("omega0_meV".into(), fnum(a.omega0_mev)),
                    ("gamma0_meV".into(), fnum(g0)),
                    ("gamma_nr_meV".into(), fnum(a.gamma_mev)),
                ],
            ))
        }
        (None, Some(g), Some(q)) => {
            let prob = ScatterProblem::from_ratios(g, q)?;
            Ok((prob, Vec::new()))
        }
        _ => Err(CliError::Config(
            "provide --g with --Q, or --theta-deg with --gamma0-mev".into(),
        )),
    }
}

pub fn spectrum(
    a: &SpectrumArgs,
    out: &Path,
    format: OutputFormat,
    svg: bool,
) -> Result<(), CliError> {
    let (prob, meta) = resolve_problem(a)?;
    let grid = log_symmetric_grid(a.span, a.points);
    let table = optical_coefficients(&prob, &grid, a.variant)?;
    let mut doc = TableDoc::new(
        "spectrum",
        vec!["omega_norm", "re_t", "im_t", "re_r", "im_r", "alpha"],
    );
    for (key, value) in meta {
        doc.meta_kv(&key, value);
    }
    doc.meta_kv("variant", a.variant.to_string());
    doc.meta_kv("g", fnum(prob.damping_ratio()));
    doc.meta_kv("Q", fnum(prob.q_factor()));
    doc.meta_kv("grid", format!("log-symmetric, span {}, {} points", a.span, a.points));
    for i in 0..grid.len() {
        doc.push(vec![
            fnum(table.omega_over_omega0[i]),
            fnum(table.t[i].re),
            fnum(table.t[i].im),
            fnum(table.r[i].re),
            fnum(table.r[i].im),
            fnum(table.alpha[i]),
        ]);
    }
    doc.write(out, "spectrum", format)?;
    if svg {
        let a_pts: Vec<(f64, f64)> = grid.iter().cloned().zip(table.alpha.iter().cloned()).collect();
        let r_pts: Vec<(f64, f64)> = grid
            .iter()
            .cloned()
            .zip(table.r.iter().map(|c| c.norm_sqr()))
            .collect();
        let t_pts: Vec<(f64, f64)> = grid
            .iter()
            .cloned()
            .zip(table.t.iter().map(|c| c.norm_sqr()))
            .collect();
        let keep = |pts: &[(f64, f64)]| -> Vec<(f64, f64)> {
            pts.iter().cloned().filter(|p| p.0 <= 3.0).collect()
        };
        let chart = line_chart(
            "Optical coefficients",
            "omega/omega0",
            "coefficient",
            &[
                Series { label: "alpha", color: "#d62728", dashed: false, points: keep(&a_pts) },
                Series { label: "|r|^2", color: "#1f77b4", dashed: false, points: keep(&r_pts) },
                Series { label: "|t|^2", color: "#2ca02c", dashed: true, points: keep(&t_pts) },
            ],
        );
        std::fs::write(out.join("spectrum.svg"), chart).map_err(CliError::Io)?;
    }
    Ok(())
}

pub fn peaks(
    q: f64,
    g_from: f64,
    g_to: f64,
    g_points: usize,
    variant: ModelVariant,
    out: &Path,
    format: OutputFormat,
) -> Result<(), CliError> {
    let gs = logspace(g_from, g_to, g_points);
    let pc = peak_curves(q, &gs, variant)?;
    let mut doc = TableDoc::new(
        "peaks",
        vec!["g", "peak_alpha", "peak_r2", "ref_2g", "ref_g2"],
    );
    doc.meta_kv("Q", fnum(q));
    doc.meta_kv("variant", variant.to_string());
    for i in 0..gs.len() {
        doc.push(vec![
            fnum(pc.g[i]),
            fnum(pc.peak_alpha[i]),
            fnum(pc.peak_r2[i]),
            fnum(pc.ref_2g[i]),
            fnum(pc.ref_g2[i]),
        ]);
    }
    doc.write(out, "peaks", format)?;
    Ok(())
}

pub fn halfmax(
    q: f64,
    which: PeakQuantity,
    variant: ModelVariant,
    ratio_from: f64,
    ratio_to: f64,
    ratio_points: usize,
    out: &Path,
    format: OutputFormat,
) -> Result<(), CliError> {
    let ratios = linspace(ratio_from, ratio_to, ratio_points);
    let rows = half_max_frequencies(q, &ratios, which, variant)?;
    let mut doc = TableDoc::new(
        "halfmax",
        vec!["ratio", "omega_minus", "omega_plus", "markov_minus", "markov_plus"],
    );
    doc.meta_kv("Q", fnum(q));
    doc.meta_kv(
        "which",
        match which {
            PeakQuantity::Absorptivity => "alpha".into(),
            PeakQuantity::Reflectivity => "r".into(),
        },
    );
    doc.meta_kv("variant", variant.to_string());
    for r in rows {
        doc.push(vec![
            fnum(r.ratio),
            fnum(r.omega_minus),
            fnum(r.omega_plus),
            fnum(r.markov_minus),
            fnum(r.markov_plus),
        ]);
    }
    doc.write(out, "halfmax", format)?;
    Ok(())
}

pub struct ThermalArgs {
    pub t_el_k: f64,
    pub t_ph_k: f64,
    pub mirror: bool,
    pub omega0_mev: f64,
    pub gamma_mev: f64,
    pub g: Option<f64>,
    pub theta_deg: Option<f64>,
    pub gamma0_mev: Option<f64>,
    pub omega_from: Option<f64>,
    pub omega_to: Option<f64>,
    pub omega_points: usize,
}

pub fn thermal(a: &ThermalArgs, out: &Path, format: OutputFormat, svg: bool) -> Result<(), CliError> {
    let (gamma_res, mut meta): (f64, Vec<(String, String)>) = match (a.theta_deg, a.g) {
        (Some(theta), None) => {
            let g0 = a
                .gamma0_mev
                .ok_or_else(|| CliError::Config("--theta-deg needs --gamma0-mev".into()))?;
            let params = CouplingParams::new(a.omega0_mev, g0, a.gamma_mev, 12.9)?;
            (
                radiative_rate_theta(&params, theta, a.omega0_mev)?,
                vec![
                    ("theta_deg".into(), format!("{theta}")),
                    ("gamma0_meV".into(), fnum(g0)),
                ],
            )
        }
        (None, Some(g)) => (g * a.gamma_mev, vec![("g".into(), format!("{g}"))]),
        (None, None) => (a.gamma_mev, vec![("g".into(), "1".into())]),
        _ => {
            return Err(CliError::Config(
                "provide either --g or --theta-deg, not both".into(),
            ))
        }
    };
    let scenario = ThermalScenario {
        t_el_k: a.t_el_k,
        t_ph_k: a.t_ph_k,
        problem: ScatterProblem {
            omega0: a.omega0_mev,
            gamma_nr: a.gamma_mev,
            gamma_res,
        },
        variant: if a.mirror { ModelVariant::Mirror } else { ModelVariant::Full },
        omega_grid_mev: linspace(
            a.omega_from.unwrap_or(a.omega0_mev / 20.0),
            a.omega_to.unwrap_or(4.0 * a.omega0_mev),
            a.omega_points,
        ),
    };
    let spec = emitted_spectrum(&scenario)?;
    let mut doc = TableDoc::new(
        "thermal",
        vec!["omega_meV", "n_out", "planck_Tel", "planck_Tph", "alpha"],
    );
    meta.push(("Tel_K".into(), format!("{}", a.t_el_k)));
    meta.push(("Tph_K".into(), format!("{}", a.t_ph_k)));
    meta.push(("omega0_meV".into(), fnum(a.omega0_mev)));
    meta.push(("gamma_nr_meV".into(), fnum(a.gamma_mev)));
    meta.push(("gamma_res_meV".into(), fnum(gamma_res)));
    meta.push((
        "variant".into(),
        if a.mirror { "mirror".into() } else { "full".into() },
    ));
    for (key, value) in meta {
        doc.meta_kv(&key, value);
    }
    for i in 0..spec.omega_mev.len() {
        doc.push(vec![
            fnum(spec.omega_mev[i]),
            fnum(spec.photons_out[i]),
            fnum(spec.planck_el[i]),
            fnum(spec.planck_ph[i]),
            fnum(spec.alpha_used[i]),
        ]);
    }
    doc.write(out, "emission", format)?;
    if svg {
        let chart = line_chart(
            "Incandescent emission",
            "omega (meV)",
            "photon occupancy",
            &[
                Series {
                    label: "n_out",
                    color: "#d62728",
                    dashed: false,
                    points: spec.omega_mev.iter().cloned().zip(spec.photons_out.iter().cloned()).collect(),
                },
                Series {
                    label: "Planck T_el",
                    color: "#555555",
                    dashed: true,
                    points: spec.omega_mev.iter().cloned().zip(spec.planck_el.iter().cloned()).collect(),
                },
                Series {
                    label: "Planck T_ph",
                    color: "#888888",
                    dashed: true,
                    points: spec.omega_mev.iter().cloned().zip(spec.planck_ph.iter().cloned()).collect(),
                },
            ],
        );
        std::fs::write(out.join("emission.svg"), chart).map_err(CliError::Io)?;
    }
    Ok(())
}

pub struct DispersionArgs {
    pub omega0_mev: f64,
    pub gamma0_mev: Option<f64>,
    pub gamma_mev: Option<f64>,
    pub size: usize,
    pub k_max: f64,
    pub omega_max: f64,
}

pub fn dispersion(a: &DispersionArgs, out: &Path, format: OutputFormat, svg: bool) -> Result<(), CliError> {
    let gamma0 = a.gamma0_mev.unwrap_or(a.omega0_mev / 30.0);
    let gamma_nr = a.gamma_mev.unwrap_or(a.omega0_mev / 15.0);
    let params = CouplingParams::new(a.omega0_mev, gamma0, gamma_nr, 12.9)?;
    let (kg, wg) = if a.size == 512 && a.k_max == 3.0 && a.omega_max == 3.0 {
        default_map_grids()
    } else {
        let n = a.size.max(16);
        (
            (0..n).map(|i| a.k_max * i as f64 / (n - 1) as f64).collect(),
            (0..n).map(|j| a.omega_max * (j as f64 + 0.5) / n as f64).collect(),
        )
    };
    let map = dispersion_map(&params, &kg, &wg)?;
    let mut doc = TableDoc::new("dispersion", vec!["k_norm", "omega_norm", "weight"]);
    doc.meta_kv("omega0_meV", fnum(a.omega0_mev));
    doc.meta_kv("gamma0_meV", fnum(gamma0));
    doc.meta_kv("gamma_nr_meV", fnum(gamma_nr));
    doc.meta_kv("gamma0_over_omega0", fnum(gamma0 / a.omega0_mev));
    doc.meta_kv("gamma_over_omega0", fnum(gamma_nr / a.omega0_mev));
    doc.meta_kv("weight_normalization", "max over the map = 1".into());
    let vmax = map.max_weight().max(1e-300);
    for (ik, &k) in map.k_norm.iter().enumerate() {
        for (iw, &w) in map.omega_norm.iter().enumerate() {
            doc.push(vec![fnum(k), fnum(w), fnum(map.weight[ik][iw] / vmax)]);
        }
    }
    doc.write(out, "dispersion", format)?;
    if svg {
        let chart = heatmap(
            "Plasmon Hopfield weight",
            &map.k_norm,
            &map.omega_norm,
            &map.weight,
            128,
        );
        std::fs::write(out.join("dispersion.svg"), chart).map_err(CliError::Io)?;
    }
    Ok(())
}
