use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::fit_slope;
use crate::error::Result;
use crate::geometry::Vector2;
use crate::kernel::{smeared_kernel, KernelParams};
use crate::quadrature::QuadSpec;
use crate::testfn::{Correlation, GridSpec, TestFunction};
use crate::weyl::DEFAULT_CHARGE_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeutralityRow {
    pub t: f64,
    pub overlap: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeutralityTable {
    pub lambda: f64,
    pub rows: Vec<NeutralityRow>,
    /// Slope of `ln |overlap|` against `ln t`; `None` on the charge
    /// selection branch where every overlap vanishes.
    pub slope: Option<f64>,
    /// `q_f q_g / 4π`, the predicted slope.
    pub predicted_slope: f64,
}

/// `<:W(g): :W(f)_(t, λt):>` along the light ray `λ = ±1`.
pub fn neutrality_decay(
    f: &TestFunction,
    g: &TestFunction,
    lambda: f64,
    t_grid: &[f64],
    params: &KernelParams,
    spec: &QuadSpec,
    grid: &GridSpec,
) -> Result<NeutralityTable> {
    let lambda = if lambda < 0.0 { -1.0 } else { 1.0 };
    let (qf, qg) = (f.charge()?, g.charge()?);
    let predicted_slope = qf * qg / (4.0 * std::f64::consts::PI);
    if (qf + qg).abs() > DEFAULT_CHARGE_TOL {
        let rows = t_grid
            .iter()
            .map(|&t| NeutralityRow {
                t,
                overlap: Complex64::new(0.0, 0.0),
                error: 0.0,
            })
            .collect();
        return Ok(NeutralityTable {
            lambda,
            rows,
            slope: None,
            predicted_slope,
        });
    }
    let c = Correlation::correlate(g, f, grid)?;
    let rows = t_grid
        .par_iter()
        .map(|&t| {
            let r = smeared_kernel(&c, -Vector2::lightlike(t, lambda), params, spec)?;
            let overlap = (-r.value).exp();
            Ok(NeutralityRow {
                t,
                overlap,
                error: overlap.norm() * r.error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.t.abs().ln()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.overlap.norm().ln()).collect();
    let slope = (rows.len() >= 2).then(|| fit_slope(&x, &y));
    Ok(NeutralityTable {
        lambda,
        rows,
        slope,
        predicted_slope,
    })
}
