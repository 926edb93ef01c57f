//! Infrared regulators `v(|p¹|, p¹)`, taken as functions of `k = |p¹|`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Regulator {
    /// `v = 1` for `k <= r`, else 0.
    SharpCutoff { r: f64 },
    /// `v = exp(-k / scale)`.
    SmoothExponential { scale: f64 },
    /// Piecewise linear through `(k[i], v[i])`, zero beyond the last knot.
    Tabulated { k: Vec<f64>, v: Vec<f64> },
}

/// Recorded constants of `|v(k) - 1| <= c k^eps` for `k < r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderBound {
    pub c: f64,
    pub eps: f64,
    pub r: f64,
}

impl Default for Regulator {
    fn default() -> Self {
        Regulator::SharpCutoff { r: 1.0 }
    }
}

impl Regulator {
    pub fn validate(&self) -> Result<()> {
        match self {
            Regulator::SharpCutoff { r } if !(*r > 0.0 && r.is_finite()) => Err(
                Error::InvalidInput(format!("sharp cutoff needs r > 0, got {r}")),
            ),
            Regulator::SmoothExponential { scale } if !(*scale > 0.0 && scale.is_finite()) => Err(
                Error::InvalidInput(format!("exponential scale must be > 0, got {scale}")),
            ),
            Regulator::Tabulated { k, v } => {
                if k.len() != v.len() || k.len() < 2 {
                    return Err(Error::InvalidInput(
                        "tabulated regulator needs >= 2 matching knots".into(),
                    ));
                }
                if k[0] != 0.0 || v[0] != 1.0 {
                    return Err(Error::InvalidInput(
                        "tabulated regulator must start at (0, 1)".into(),
                    ));
                }
                if k.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::InvalidInput("tabulated knots must increase".into()));
                }
                if *v.last().unwrap() != 0.0 {
                    return Err(Error::InvalidInput(
                        "tabulated regulator must end at v = 0".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `v(|p¹|, p¹)`; symmetric in `p¹` by construction.
    pub fn eval_momentum(&self, p1: f64) -> f64 {
        self.eval(p1.abs())
    }

    pub fn eval(&self, k: f64) -> f64 {
        match self {
            Regulator::SharpCutoff { r } => {
                if k <= *r {
                    1.0
                } else {
                    0.0
                }
            }
            Regulator::SmoothExponential { scale } => (-k / scale).exp(),
            Regulator::Tabulated { k: ks, v } => {
                if k >= *ks.last().unwrap() {
                    return 0.0;
                }
                let i = ks.partition_point(|&x| x <= k).saturating_sub(1);
                let t = (k - ks[i]) / (ks[i + 1] - ks[i]);
                v[i] + t * (v[i + 1] - v[i])
            }
        }
    }

    /// Points where `v` is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Regulator::SharpCutoff { r } => vec![*r],
            Regulator::SmoothExponential { .. } => vec![],
            Regulator::Tabulated { k, .. } => k[1..].to_vec(),
        }
    }

    /// Momentum beyond which `v` is negligible (below 1e-17).
    pub fn effective_support(&self) -> f64 {
        match self {
            Regulator::SharpCutoff { r } => *r,
            Regulator::SmoothExponential { scale } => 40.0 * scale,
            Regulator::Tabulated { k, .. } => *k.last().unwrap(),
        }
    }

    pub fn holder_bound(&self) -> HolderBound {
        match self {
            Regulator::SharpCutoff { r } => HolderBound {
                c: 0.0,
                eps: 1.0,
                r: *r,
            },
            Regulator::SmoothExponential { scale } => HolderBound {
                c: 1.0 / scale,
                eps: 1.0,
                r: *scale,
            },
            Regulator::Tabulated { k, v } => HolderBound {
                c: (v[1] - 1.0).abs() / k[1],
                eps: 1.0,
                r: k[1],
            },
        }
    }
}

impl FromStr for Regulator {
    type Err = Error;

    /// `sharp:R` or `exp:SCALE`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("regulator '{s}': expected KIND:VALUE")))?;
        let x: f64 = arg
            .parse()
            .map_err(|_| Error::Config(format!("regulator '{s}': bad number '{arg}'")))?;
        let reg = match kind {
            "sharp" => Regulator::SharpCutoff { r: x },
            "exp" => Regulator::SmoothExponential { scale: x },
            _ => return Err(Error::Config(format!("unknown regulator kind '{kind}'"))),
        };
        reg.validate()?;
        Ok(reg)
    }
}
