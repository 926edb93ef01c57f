//! The JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{KernelParams, Regulator};
use crate::quadrature::QuadSpec;
use crate::scattering::{CollisionConfig, DEFAULT_H_ORDER};
use crate::testfn::{GridSpec, TestFunction, TestFunctionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadOverrides {
    #[serde(default = "default_base_order")]
    pub base_order: usize,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

fn default_base_order() -> usize {
    12
}
fn default_max_depth() -> usize {
    10
}
fn default_abs_tol() -> f64 {
    1e-10
}
fn default_rel_tol() -> f64 {
    1e-9
}

impl Default for QuadOverrides {
    fn default() -> Self {
        QuadOverrides {
            base_order: default_base_order(),
            max_depth: default_max_depth(),
            abs_tol: default_abs_tol(),
            rel_tol: default_rel_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<PathBuf>,
}

/// Everything a batch run needs. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub f: TestFunctionSpec,
    pub g: TestFunctionSpec,
    #[serde(default)]
    pub regulator: Regulator,
    /// Use this scale instead of fitting it from the regulator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_v: Option<f64>,
    #[serde(default)]
    pub quad: QuadOverrides,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(rename = "T_grid", default = "default_big_t_grid")]
    pub big_t_grid: Vec<f64>,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default = "default_h_order")]
    pub h_order: usize,
    /// Largest accepted `|S_∞ - e^{-i q_f q_g/2}|`.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub seed: u64,
}

fn default_big_t_grid() -> Vec<f64> {
    vec![std::f64::consts::E.powi(3), 50.0, 200.0, 1000.0, 5000.0, 1e4]
}
fn default_t_grid() -> Vec<f64> {
    crate::asymptotics::DEFAULT_T_GRID.to_vec()
}
fn default_h_order() -> usize {
    DEFAULT_H_ORDER
}
fn default_tolerance() -> f64 {
    0.02
}

impl RunConfig {
    /// Parse JSON text; errors carry line and column.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn quad_spec(&self) -> Result<QuadSpec> {
        let q = self.quad;
        QuadSpec::new(q.base_order, q.max_depth, q.abs_tol, q.rel_tol)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn kernel_params(&self, spec: &QuadSpec) -> Result<KernelParams> {
        match self.mu_v {
            Some(mu) => KernelParams::new(mu),
            None => KernelParams::from_regulator(&self.regulator, spec),
        }
    }

    pub fn functions(&self) -> Result<(TestFunction, TestFunction)> {
        Ok((self.f.build()?, self.g.build()?))
    }

    pub fn collision(&self) -> Result<CollisionConfig> {
        let spec = self.quad_spec()?;
        let params = self.kernel_params(&spec)?;
        let (f, g) = self.functions()?;
        CollisionConfig::new(f, g, self.big_t_grid.clone(), self.h_order, params, spec, self.grid)
    }
}
