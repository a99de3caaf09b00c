use std::path::Path;

use flrw_splitting::dynamics::{Frame, Section};
use flrw_splitting::models::ModelParams;
use flrw_splitting::normalform::ResonancePolicy;
use serde::Deserialize;

use crate::CliError;

/// Equally spaced grid `lo, …, hi` with `n` intervals.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        (0..=self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / self.n as f64)
            .collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 || !(self.lo.is_finite() && self.hi.is_finite()) || self.hi <= self.lo {
            return Err(CliError::Config(format!(
                "grid needs finite lo < hi and n >= 1, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Exact parameters as strings such as `"3/2"` or `"0.25"`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalParams {
    #[serde(rename = "L")]
    pub l: Option<String>,
    pub phi: Option<String>,
    pub v3: Option<String>,
    pub v4: Option<String>,
}

/// Contents of `--config`: either a bare model descriptor or this object.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelParams>,
    pub frame: Option<Frame>,
    /// Flat state `[u, U, w.., W..]`.
    pub state: Option<Vec<f64>>,
    pub t_end: Option<f64>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub grid: Option<GridSpec>,
    pub section: Option<Section>,
    pub crossings: Option<usize>,
    pub rational: Option<RationalParams>,
    pub phi_matrix: Option<Vec<Vec<f64>>>,
    pub policy: Option<ResonancePolicy>,
    #[serde(default)]
    pub frequency_fit: bool,
    pub action_grid: Option<Vec<[f64; 2]>>,
}

fn located(e: &serde_json::Error, path: &Path) -> CliError {
    // serde_json appends "at line L column C".
    CliError::Config(format!("{}: {e}", path.display()))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<RunConfig, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| located(&e, path))?;
        let cfg = if value.get("k").is_some() {
            let model = ModelParams::from_json(text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            RunConfig {
                model: Some(model),
                ..Default::default()
            }
        } else {
            serde_json::from_str::<RunConfig>(text).map_err(|e| located(&e, path))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        if self.samples == Some(0) || self.crossings == Some(0) {
            return Err(CliError::Config(
                "samples and crossings must be positive".into(),
            ));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::Config(format!("tolerance {t} outside (0, 1)")));
            }
        }
        if let Some(t) = self.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("t_end = {t} must be positive")));
            }
        }
        if matches!(&self.action_grid, Some(g) if g.is_empty()) {
            return Err(CliError::Config("action_grid is empty".into()));
        }
        Ok(())
    }
}
