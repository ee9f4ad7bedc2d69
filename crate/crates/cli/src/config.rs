//! JSON well configuration (schema shipped in `config.schema.json` at the
//! repository root).

use std::path::Path;

use serde::Deserialize;

use msp_core::WellProfile;

use crate::CliError;

/// Square-well description; keys match the shipped schema exactly.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WellConfig {
    pub well_nm: f64,
    #[serde(rename = "barrier_meV")]
    pub barrier_mev: f64,
    pub eff_mass: f64,
    pub eps_s: f64,
    #[serde(rename = "Ns_cm2")]
    pub ns_cm2: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_pad_nm")]
    pub barrier_pad_nm: f64,
    #[serde(rename = "temperature_K", default)]
    pub temperature_k: f64,
}

fn default_grid_points() -> usize {
    1024
}

fn default_pad_nm() -> f64 {
    20.0
}

impl WellConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: WellConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!(
                "{}: line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let field_err = |field: &str, why: &str| {
            Err(CliError::Config(format!("field '{field}': {why}")))
        };
        if !(self.well_nm > 0.0) {
            return field_err("well_nm", "must be positive");
        }
        if !self.barrier_mev.is_finite() || self.barrier_mev < 0.0 {
            return field_err("barrier_meV", "must be finite and non-negative");
        }
        if !(self.eff_mass > 0.0) {
            return field_err("eff_mass", "must be positive");
        }
        if !(self.eps_s >= 1.0) {
            return field_err("eps_s", "must be >= 1");
        }
        if !(self.ns_cm2 >= 0.0) {
            return field_err("Ns_cm2", "must be >= 0");
        }
        if self.grid_points < 16 {
            return field_err("grid_points", "must be >= 16");
        }
        if !(self.barrier_pad_nm > 0.0) {
            return field_err("barrier_pad_nm", "must be positive");
        }
        if self.temperature_k < 0.0 {
            return field_err("temperature_K", "must be >= 0");
        }
        Ok(())
    }

    pub fn profile(&self) -> WellProfile {
        let mut p = WellProfile::square(
            self.well_nm,
            self.barrier_mev,
            self.eff_mass,
            self.eps_s,
            self.ns_cm2,
            self.grid_points,
            self.barrier_pad_nm,
        );
        p.temperature_k = self.temperature_k;
        p
    }

    pub fn with_density(&self, ns_cm2: f64) -> Self {
        Self {
            ns_cm2,
            ..self.clone()
        }
    }

    pub fn meta(&self) -> Vec<(String, String)> {
        vec![
            ("well_nm".into(), format!("{}", self.well_nm)),
            ("barrier_meV".into(), format!("{}", self.barrier_mev)),
            ("eff_mass".into(), format!("{}", self.eff_mass)),
            ("eps_s".into(), format!("{}", self.eps_s)),
            ("Ns_cm2".into(), format!("{:e}", self.ns_cm2)),
            ("grid_points".into(), format!("{}", self.grid_points)),
            ("barrier_pad_nm".into(), format!("{}", self.barrier_pad_nm)),
            ("temperature_K".into(), format!("{}", self.temperature_k)),
        ]
    }
}
