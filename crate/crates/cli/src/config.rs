use serde::{Deserialize, Serialize};

use ri_core::SpaceSpec;

use crate::CliError;

fn default_k_radius() -> i64 {
    256
}
fn default_n_max() -> u32 {
    64
}
fn default_seed() -> u64 {
    ri_core::spectra::DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    #[serde(default = "ProbeSection::default_k_radius")]
    pub k_radius: i64,
    #[serde(default = "ProbeSection::default_n_list")]
    pub n_list: Vec<u32>,
    #[serde(default = "ProbeSection::default_n_random")]
    pub n_random: usize,
    /// Tolerance used when truncating the right inverse `T`.
    #[serde(default = "ProbeSection::default_t_tol")]
    pub t_tol: f64,
}

impl ProbeSection {
    fn default_k_radius() -> i64 {
        128
    }
    fn default_n_list() -> Vec<u32> {
        vec![8, 16, 32, 64]
    }
    fn default_n_random() -> usize {
        200
    }
    fn default_t_tol() -> f64 {
        1e-12
    }
}

impl Default for ProbeSection {
    fn default() -> Self {
        ProbeSection {
            k_radius: Self::default_k_radius(),
            n_list: Self::default_n_list(),
            n_random: Self::default_n_random(),
            t_tol: Self::default_t_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSection {
    /// `θ = 1/p`, in `(0, 1]`.
    pub theta: f64,
    #[serde(default = "WitnessSection::default_n_copies")]
    pub n_copies: usize,
    #[serde(default = "WitnessSection::default_windows")]
    pub windows: Vec<u32>,
    #[serde(default = "WitnessSection::default_n_random")]
    pub n_random: usize,
    /// Window position; chosen by smallest residual when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

impl WitnessSection {
    fn default_n_copies() -> usize {
        8
    }
    fn default_windows() -> Vec<u32> {
        vec![8, 16, 32, 64]
    }
    fn default_n_random() -> usize {
        100
    }
}

/// Everything a command needs; embedded verbatim in JSON reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceSpec,
    #[serde(default = "default_k_radius")]
    pub k_radius: i64,
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default)]
    pub lambda_grid: Vec<f64>,
    /// Extra grid points given as exponents, `λ = 2^θ`.
    #[serde(default)]
    pub theta_grid: Vec<f64>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub probe: ProbeSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSection>,
}

fn config_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("invalid `{field}`: {msg}"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_max < 1 {
            return Err(config_err("n_max", "must be positive"));
        }
        if self.k_radius < 4 * self.n_max as i64 {
            return Err(config_err(
                "k_radius",
                format!("must be at least 4*n_max = {}, got {}", 4 * self.n_max, self.k_radius),
            ));
        }
        if let Some(bad) = self.lambda_grid.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(config_err("lambda_grid", format!("entries must be positive, got {bad}")));
        }
        if let Some(bad) = self.theta_grid.iter().find(|t| !t.is_finite()) {
            return Err(config_err("theta_grid", format!("entries must be finite, got {bad}")));
        }
        if self.probe.k_radius < 0 {
            return Err(config_err("probe.k_radius", "must be nonnegative"));
        }
        if self.probe.n_list.is_empty() || self.probe.n_list.contains(&0) {
            return Err(config_err("probe.n_list", "must be a nonempty list of positive window sizes"));
        }
        if !(self.probe.t_tol > 0.0) {
            return Err(config_err("probe.t_tol", "must be positive"));
        }
        if let Some(w) = &self.witness {
            if !(w.theta > 0.0 && w.theta <= 1.0) {
                return Err(config_err("witness.theta", format!("must lie in (0, 1], got {}", w.theta)));
            }
            if w.n_copies == 0 {
                return Err(config_err("witness.n_copies", "must be positive"));
            }
            if w.windows.is_empty() || w.windows.contains(&0) {
                return Err(config_err("witness.windows", "must be a nonempty list of positive window sizes"));
            }
        }
        Ok(())
    }

    /// All grid points `λ`, in ascending order without duplicates.
    pub fn lambdas(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .lambda_grid
            .iter()
            .copied()
            .chain(self.theta_grid.iter().map(|t| t.exp2()))
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }

    pub fn probe_range(&self) -> (i64, i64) {
        (-self.probe.k_radius, self.probe.k_radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"space":{"type":"orlicz","N":{"kind":"pure_power","a":2}}"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::from_json(&format!("{BASE}}}")).unwrap();
        assert_eq!(cfg.k_radius, 256);
        assert_eq!(cfg.n_max, 64);
        assert_eq!(cfg.seed, 0x5EED);
        assert_eq!(cfg.probe, ProbeSection::default());
        assert!(cfg.witness.is_none());
    }

    #[test]
    fn validation_names_fields() {
        let err = RunConfig::from_json(&format!(r#"{BASE},"k_radius":10}}"#)).unwrap_err();
        assert!(err.to_string().contains("`k_radius`"), "{err}");
        let err = RunConfig::from_json(&format!(r#"{BASE},"lambda_grid":[1.0,-2.0]}}"#)).unwrap_err();
        assert!(err.to_string().contains("`lambda_grid`"), "{err}");
        let err = RunConfig::from_json(&format!(r#"{BASE},"witness":{{"theta":1.5}}}}"#)).unwrap_err();
        assert!(err.to_string().contains("`witness.theta`"), "{err}");
        let err = RunConfig::from_json(&format!(r#"{BASE},"nmax":3}}"#)).unwrap_err();
        assert!(err.to_string().contains("`nmax`"), "{err}");
    }

    #[test]
    fn lambdas_merge_grids() {
        let cfg = RunConfig::from_json(&format!(r#"{BASE},"lambda_grid":[2.0,1.5],"theta_grid":[1.0,0.0]}}"#)).unwrap();
        assert_eq!(cfg.lambdas(), vec![1.0, 1.5, 2.0]);
    }
}
