//! Sweep run configuration: JSON documents mirroring the sweep spec, with
//! command-line flags taking precedence over file values.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// JSON configuration accepted via `--config`. Every field is optional;
/// whatever the flags do not override must be present here.
///
/// `axis_values` carries snapshot counts for a snapshots sweep and INR in
/// dB for an INR sweep; `grid` is the equivalent compact syntax
/// (`start:stop:logK`, `start:stop:step`, or a comma list) and is used
/// when `axis_values` is absent. `fixed_value` is the non-swept
/// parameter: INR in dB for snapshots sweeps, the snapshot count for INR
/// sweeps.
#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub spacing: Option<f64>,
    pub u0: Option<f64>,
    pub u1: Option<f64>,
    pub delta: Option<f64>,
    pub axis: Option<String>,
    pub axis_values: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub fixed_value: Option<f64>,
    pub trials: Option<usize>,
    pub master_seed: Option<u64>,
    pub db_mean: Option<bool>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub emit_model_only: Option<bool>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips() {
        let cfg = RunConfig {
            n: Some(50),
            spacing: Some(0.5),
            u0: Some(0.0),
            u1: Some(0.06),
            delta: Some(0.5),
            axis: Some("snapshots".into()),
            axis_values: Some(vec![25.0, 50.0]),
            grid: None,
            fixed_value: Some(20.0),
            trials: Some(500),
            master_seed: Some(42),
            db_mean: Some(false),
            output: Some("fig3.csv".into()),
            format: Some("csv".into()),
            emit_model_only: Some(false),
        };
        let json = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.n, Some(50));
        assert_eq!(back.axis_values.as_deref(), Some(&[25.0, 50.0][..]));
    }

    #[test]
    fn unknown_fields_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#);
        assert!(err.is_err());
    }
}
