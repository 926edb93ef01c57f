use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::testfn::scale;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeSample {
    pub big_t: f64,
    pub s_t: Complex64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeSeries {
    pub samples: Vec<AmplitudeSample>,
    pub extrapolated: Complex64,
    /// Root-mean-square residual of the fit.
    pub extrapolation_error: f64,
    /// Coefficient of `s(T)/T`.
    pub slope: Complex64,
    pub target: Complex64,
    /// Set when the fit residuals do not shrink with `T`.
    pub low_confidence: bool,
}

impl AmplitudeSeries {
    pub fn gap(&self) -> f64 {
        (self.extrapolated - self.target).norm()
    }

    /// `|S_T| <= 1 + k err` for every sample.
    pub fn within_unit_disk(&self, k: f64) -> bool {
        self.samples.iter().all(|s| s.s_t.norm() <= 1.0 + k * s.err)
    }
}

/// Least-squares fit of `S_T = S_∞ + c s(T)/T`.
pub fn extrapolate(samples: &[AmplitudeSample], target: Complex64) -> Result<AmplitudeSeries> {
    if samples.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "extrapolation needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    let x: Vec<f64> = samples.iter().map(|s| scale(s.big_t) / s.big_t).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = samples.iter().map(|s| s.s_t).sum::<Complex64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("T values give identical s(T)/T".into()));
    }
    let sxy: Complex64 = x
        .iter()
        .zip(samples)
        .map(|(a, s)| (a - mx) * (s.s_t - my))
        .sum();
    let c = sxy / sxx;
    let s_inf = my - c * mx;
    let residuals: Vec<f64> = x
        .iter()
        .zip(samples)
        .map(|(a, s)| (s.s_t - s_inf - c * a).norm())
        .collect();
    let rms = (residuals.iter().map(|r| r * r).sum::<f64>() / (n - 2.0).max(1.0)).sqrt();
    let scale_r = residuals.iter().copied().fold(0.0, f64::max);
    let low_confidence = residuals
        .windows(2)
        .any(|w| w[1] > w[0] + 1e-12 * (1.0 + scale_r));
    Ok(AmplitudeSeries {
        samples: samples.to_vec(),
        extrapolated: s_inf,
        extrapolation_error: rms,
        slope: c,
        target,
        low_confidence,
    })
}
