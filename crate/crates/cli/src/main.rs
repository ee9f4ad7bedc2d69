//! `msp`: superradiant multisubband-plasmon optics from the command line.
//!
//! Exit codes: 0 success, 2 configuration/usage error, 3 physics-domain
//! error (e.g. NoBoundState), 1 I/O failure.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use msp_core::scattering::{ModelVariant, PeakQuantity};

use commands::{DispersionArgs, GammaArgs, SpectrumArgs, ThermalArgs};
use config::WellConfig;
use output::OutputFormat;

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<ModelVariant, String> {
    s.parse()
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Physics(msp_core::Error),
    Io(std::io::Error),
}

impl From<msp_core::Error> for CliError {
    fn from(e: msp_core::Error) -> Self {
        match e {
            msp_core::Error::InvalidInput(msg) => CliError::Config(msg),
            other => CliError::Physics(other),
        }
    }
}

fn physics_error_name(e: &msp_core::Error) -> &'static str {
    use msp_core::Error::*;
    match e {
        NoBoundState => "NoBoundState",
        GridTooCoarse { .. } => "GridTooCoarse",
        NonPositiveSpectrum { .. } => "NonPositiveSpectrum",
        AngleOutOfRange { .. } => "AngleOutOfRange",
        QuadratureNotConverged { .. } => "QuadratureNotConverged",
        HalfMaxNotBracketed { .. } => "HalfMaxNotBracketed",
        LightConePoint => "LightConePoint",
        InvalidInput(_) => "InvalidInput",
    }
}

#[derive(Parser)]
#[command(
    name = "msp",
    version,
    about = "Optics of superradiant multisubband plasmons coupled to free-space radiation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the well: subband wavefunctions, Fermi filling, transition currents
    Subbands {
        /// JSON well description (see config.schema.json)
        #[arg(long)]
        config: PathBuf,
        /// Number of bound states requested
        #[arg(long, default_value_t = 12)]
        states: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Multisubband-plasmon modes and absorption spectra (bare vs coupled)
    Plasmons {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 12)]
        states: usize,
        /// Lorentzian broadening of the spectra (meV)
        #[arg(long, default_value_t = 10.0)]
        broadening_mev: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        svg: bool,
    },
    /// Radiative rate of the bright mode versus propagation angle
    Gamma {
        /// Microscopic route: derive omega_0 and Gamma_0 from this well
        #[arg(long)]
        config: Option<PathBuf>,
        /// Direct route: hbar Gamma_0 in meV
        #[arg(long)]
        gamma0_mev: Option<f64>,
        #[arg(long, default_value_t = 100.0)]
        omega0_mev: f64,
        #[arg(long, default_value_t = 10.0)]
        gamma_mev: f64,
        #[arg(long, default_value_t = 12)]
        states: usize,
        #[arg(long, default_value_t = 891)]
        theta_points: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        svg: bool,
    },
    /// Critical angle (radiative = non-radiative rate) versus sheet density
    CriticalAngle {
        #[arg(long)]
        config: PathBuf,
        /// Non-radiative width hbar gamma (meV)
        #[arg(long, default_value_t = 10.0)]
        gamma_mev: f64,
        #[arg(long, default_value_t = 1e12)]
        ns_from: f64,
        #[arg(long, default_value_t = 1e14)]
        ns_to: f64,
        #[arg(long, default_value_t = 9)]
        ns_points: usize,
        #[arg(long, default_value_t = 32)]
        states: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Optical coefficients t, r, alpha on a frequency grid
    Spectrum {
        /// Damping ratio Gamma(theta, omega_0)/gamma
        #[arg(long)]
        g: Option<f64>,
        /// Quality factor omega_0/gamma
        #[arg(long, short = 'Q')]
        q: Option<f64>,
        /// Microscopic route: propagation angle (needs --gamma0-mev)
        #[arg(long)]
        theta_deg: Option<f64>,
        #[arg(long, default_value_t = 100.0)]
        omega0_mev: f64,
        #[arg(long, default_value_t = 10.0)]
        gamma_mev: f64,
        #[arg(long)]
        gamma0_mev: Option<f64>,
        /// Model: full | rwa | markov | mirror
        #[arg(long, default_value = "full", value_parser = parse_variant)]
        variant: ModelVariant,
        #[arg(long, default_value_t = 4001)]
        points: usize,
        /// Grid spans omega_0/span .. span*omega_0, log-symmetric
        #[arg(long, default_value_t = 50.0)]
        span: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        svg: bool,
    },
    /// Peak absorptivity and reflectivity versus damping ratio
    Peaks {
        #[arg(long, short = 'Q', default_value_t = 15.0)]
        q: f64,
        #[arg(long, default_value_t = 1e-3)]
        g_from: f64,
        #[arg(long, default_value_t = 100.0)]
        g_to: f64,
        #[arg(long, default_value_t = 61)]
        g_points: usize,
        #[arg(long, default_value = "full", value_parser = parse_variant)]
        variant: ModelVariant,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Half-maximum frequencies versus Gamma(theta, omega_0)/omega_0
    Halfmax {
        #[arg(long, short = 'Q', default_value_t = 15.0)]
        q: f64,
        /// Spectrum to scan: alpha | r
        #[arg(long, default_value = "alpha")]
        which: String,
        #[arg(long, default_value = "full", value_parser = parse_variant)]
        variant: ModelVariant,
        #[arg(long, default_value_t = 0.05)]
        ratio_from: f64,
        #[arg(long, default_value_t = 2.0)]
        ratio_to: f64,
        #[arg(long, default_value_t = 40)]
        ratio_points: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Incandescent emission spectrum for unequal bath temperatures
    Thermal {
        /// Electronic bath temperature (K)
        #[arg(long = "Tel")]
        tel: f64,
        /// Photonic bath temperature (K)
        #[arg(long = "Tph")]
        tph: f64,
        /// Back the well with a mirror (single photonic port)
        #[arg(long)]
        mirror: bool,
        #[arg(long, default_value_t = 100.0)]
        omega0_mev: f64,
        #[arg(long, default_value_t = 100.0 / 15.0)]
        gamma_mev: f64,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        theta_deg: Option<f64>,
        #[arg(long)]
        gamma0_mev: Option<f64>,
        #[arg(long)]
        omega_from: Option<f64>,
        #[arg(long)]
        omega_to: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        omega_points: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        svg: bool,
    },
    /// Plasmon Hopfield weight over the (k, Omega) plane
    Dispersion {
        #[arg(long, default_value_t = 100.0)]
        omega0_mev: f64,
        /// Defaults to omega_0/30
        #[arg(long)]
        gamma0_mev: Option<f64>,
        /// Defaults to omega_0/15
        #[arg(long)]
        gamma_mev: Option<f64>,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long, default_value_t = 3.0)]
        k_max: f64,
        #[arg(long, default_value_t = 3.0)]
        omega_max: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        svg: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Subbands {
            config,
            states,
            out,
            format,
        } => {
            let cfg = WellConfig::load(&config)?;
            commands::subbands(&cfg, states, &out, format)
        }
        Command::Plasmons {
            config,
            states,
            broadening_mev,
            out,
            format,
            svg,
        } => {
            let cfg = WellConfig::load(&config)?;
            commands::plasmons(&cfg, states, broadening_mev, &out, format, svg)
        }
        Command::Gamma {
            config,
            gamma0_mev,
            omega0_mev,
            gamma_mev,
            states,
            theta_points,
            out,
            format,
            svg,
        } => {
            let cfg = match &config {
                Some(path) => Some(WellConfig::load(path)?),
                None => None,
            };
            let args = GammaArgs {
                gamma0_mev,
                omega0_mev,
                gamma_mev,
                theta_points,
            };
            commands::gamma(cfg.as_ref(), &args, states, &out, format, svg)
        }
        Command::CriticalAngle {
            config,
            gamma_mev,
            ns_from,
            ns_to,
            ns_points,
            states,
            out,
            format,
        } => {
            let cfg = WellConfig::load(&config)?;
            commands::critical_angle_sweep(
                &cfg, gamma_mev, ns_from, ns_to, ns_points, states, &out, format,
            )
        }
        Command::Spectrum {
            g,
            q,
            theta_deg,
            omega0_mev,
            gamma_mev,
            gamma0_mev,
            variant,
            points,
            span,
            out,
            format,
            svg,
        } => {
            let args = SpectrumArgs {
                g,
                q,
                theta_deg,
                omega0_mev,
                gamma_mev,
                gamma0_mev,
                variant,
                points,
                span,
            };
            commands::spectrum(&args, &out, format, svg)
        }
        Command::Peaks {
            q,
            g_from,
            g_to,
            g_points,
            variant,
            out,
            format,
        } => commands::peaks(q, g_from, g_to, g_points, variant, &out, format),
        Command::Halfmax {
            q,
            which,
            variant,
            ratio_from,
            ratio_to,
            ratio_points,
            out,
            format,
        } => {
            let quantity = match which.as_str() {
                "alpha" => PeakQuantity::Absorptivity,
                "r" => PeakQuantity::Reflectivity,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown --which '{other}' (expected alpha|r)"
                    )))
                }
            };
            commands::halfmax(
                q,
                quantity,
                variant,
                ratio_from,
                ratio_to,
                ratio_points,
                &out,
                format,
            )
        }
        Command::Thermal {
            tel,
            tph,
            mirror,
            omega0_mev,
            gamma_mev,
            g,
            theta_deg,
            gamma0_mev,
            omega_from,
            omega_to,
            omega_points,
            out,
            format,
            svg,
        } => {
            let args = ThermalArgs {
                t_el_k: tel,
                t_ph_k: tph,
                mirror,
                omega0_mev,
                gamma_mev,
                g,
                theta_deg,
                gamma0_mev,
                omega_from,
                omega_to,
                omega_points,
            };
            commands::thermal(&args, &out, format, svg)
        }
        Command::Dispersion {
            omega0_mev,
            gamma0_mev,
            gamma_mev,
            size,
            k_max,
            omega_max,
            out,
            format,
            svg,
        } => {
            let args = DispersionArgs {
                omega0_mev,
                gamma0_mev,
                gamma_mev,
                size,
                k_max,
                omega_max,
            };
            commands::dispersion(&args, &out, format, svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Physics(e)) => {
            eprintln!("error: {}: {e}", physics_error_name(&e));
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
