//! Config-file loading and flag/file/default merging.
//!
//! Each command accepts a flat one-level JSON object; command-line flags
//! override file values, and unfilled fields fall back to scenario defaults.
//! Unknown keys are rejected with the offending key named.

use serde::Deserialize;
use std::path::Path;

/// Errors that should terminate with exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn load_file<T: Default + for<'de> Deserialize<'de>>(
    path: Option<&Path>,
) -> Result<T, ConfigError> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("invalid config: {e}")))
}

pub fn require_positive(name: &str, value: f64) -> Result<f64, ConfigError> {
    if value <= 0.0 || !value.is_finite() {
        return Err(ConfigError(format!(
            "{name}: must be positive, got {value}"
        )));
    }
    Ok(value)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianFileConfig {
    #[serde(rename = "P")]
    pub p: Option<f64>,
    #[serde(rename = "P_Y")]
    pub p_y: Option<f64>,
    #[serde(rename = "P_Z")]
    pub p_z: Option<f64>,
    #[serde(rename = "P_E")]
    pub p_e: Option<f64>,
    #[serde(rename = "P_B")]
    pub p_b: Option<f64>,
    pub d_start: Option<f64>,
    pub d_stop: Option<f64>,
    pub d_step: Option<f64>,
    pub schemes: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryFileConfig {
    pub eps: Option<f64>,
    pub zeta: Option<f64>,
    pub beta_start: Option<f64>,
    pub beta_stop: Option<f64>,
    pub beta_step: Option<f64>,
    pub schemes: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFileConfig {
    pub n: Option<usize>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub rf: Option<f64>,
    pub typicality_slack: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub beta: Option<f64>,
    pub eps: Option<f64>,
    pub zeta: Option<f64>,
    pub u: Option<f64>,
    pub out: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyFileConfig {
    pub beta: Option<f64>,
    pub eps: Option<f64>,
    #[serde(rename = "P_Y")]
    pub p_y: Option<f64>,
    #[serde(rename = "P_Z")]
    pub p_z: Option<f64>,
    #[serde(rename = "P_E")]
    pub p_e: Option<f64>,
    #[serde(rename = "P_B")]
    pub p_b: Option<f64>,
    pub out: Option<String>,
}

/// Builds the inclusive grid start, start+step, … ≤ stop (+tolerance).
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ConfigError> {
    if step <= 0.0 || !step.is_finite() {
        return Err(ConfigError(format!("step: must be positive, got {step}")));
    }
    if stop < start {
        return Err(ConfigError(format!(
            "grid: stop {stop} is below start {start}"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u64;
    loop {
        let x = start + k as f64 * step;
        if x > stop + 1e-12 {
            break;
        }
        values.push(x);
        k += 1;
        if k > 1_000_000 {
            return Err(ConfigError("grid: more than 1e6 points".to_string()));
        }
    }
    Ok(values)
}
