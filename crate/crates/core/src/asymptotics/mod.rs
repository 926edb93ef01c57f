//! Numerical checks of the ε-regularized logarithm limit and of the
//! large-translation behaviour of smeared kernels.

mod poly;

pub use poly::{Poly2, PolyPair};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::kernel::{smeared_chiral, smeared_kernel, Chirality, KernelParams};
use crate::quadrature::{integrate_2d, integrate_2d_with_breaks, QuadResult, QuadSpec};
use crate::testfn::{Correlation, GridSpec, TestFunction};

/// Tolerance used when the zero set of `h1` cannot be declared to the
/// quadrature and is resolved by dense refinement instead.
pub const CURVED_ZERO_SET_TOL: f64 = 1e-4;

fn integrate_against_f<F>(
    pp: &PolyPair,
    f: &TestFunction,
    integrand: F,
    spec: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let rect = f.support_box();
    let body = |x: Vector2| {
        let fx = f.evaluate(x);
        if fx == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            integrand(pp.h1.eval(x.x0, x.x1), pp.h2.eval(x.x0, x.x1)) * fx
        }
    };
    // The branch-resolved integrand also jumps where h2 changes sign.
    let lines = pp.h1.zero_lines().and_then(|mut l| {
        l.extend(pp.h2.zero_lines()?);
        Some(l)
    });
    let r = match lines {
        Some(lines) => integrate_2d(body, &rect, &lines, spec),
        None => {
            let loose = spec.with_tolerances(
                spec.abs_tol.max(CURVED_ZERO_SET_TOL),
                spec.rel_tol.max(CURVED_ZERO_SET_TOL),
            )?;
            let n = 16;
            let b0: Vec<f64> = (1..n)
                .map(|i| rect.lo.x0 + rect.width0() * i as f64 / n as f64)
                .collect();
            let b1: Vec<f64> = (1..n)
                .map(|i| rect.lo.x1 + rect.width1() * i as f64 / n as f64)
                .collect();
            integrate_2d_with_breaks(body, &rect, &[], &b0, &b1, &loose)
        }
    };
    r.require_converged()
}

/// `∫ ln(h1(x) + iε h2(x)) f(x) d²x` at fixed `ε > 0`.
pub fn log_branch_lhs(
    pp: &PolyPair,
    f: &TestFunction,
    eps: f64,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    integrate_against_f(pp, f, |h1, h2| Complex64::new(h1, eps * h2).ln(), spec)
}

/// `∫ [ln|h1| + θ(-h1) sgn(h2) iπ] f d²x`, the `ε ↓ 0` limit.
pub fn log_branch_rhs(pp: &PolyPair, f: &TestFunction, spec: &QuadSpec) -> Result<QuadResult> {
    integrate_against_f(
        pp,
        f,
        |h1, h2| {
            let phase = if h1 < 0.0 { h2.signum() * PI } else { 0.0 };
            Complex64::new(h1.abs().ln(), phase)
        },
        spec,
    )
}

/// Direction of the large translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `e_(1) = (0, 1)`
    Spacelike,
    /// `e_(0) = (1, 0)`
    Timelike,
    /// `e_(+) = (1, 1)`
    LightlikePlus,
    /// `e_(-) = (1, -1)`
    LightlikeMinus,
}

impl Direction {
    pub fn unit(&self) -> Vector2 {
        match self {
            Direction::Spacelike => Vector2::E1,
            Direction::Timelike => Vector2::E0,
            Direction::LightlikePlus => Vector2::new(1.0, 1.0),
            Direction::LightlikeMinus => Vector2::new(1.0, -1.0),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "spacelike" => Ok(Direction::Spacelike),
            "timelike" => Ok(Direction::Timelike),
            "lightlike+" | "lightlike_plus" => Ok(Direction::LightlikePlus),
            "lightlike-" | "lightlike−" | "lightlike_minus" => Ok(Direction::LightlikeMinus),
            _ => Err(Error::Config(format!("unknown case '{s}'"))),
        }
    }
}

pub const DEFAULT_T_GRID: [f64; 6] = [8.0, 16.0, 32.0, 64.0, 128.0, 256.0];

/// Translation `t (e + r_t)` with `r_t = |t|^{-α} (1, 1)/√2` off the light
/// cone; along light rays `r_t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCase {
    pub direction: Direction,
    pub alpha: f64,
    pub t_grid: Vec<f64>,
}

impl AsymptoticCase {
    pub fn new(direction: Direction, alpha: f64, t_grid: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if t_grid.iter().any(|&t| t == 0.0 || !t.is_finite()) {
            return Err(Error::InvalidInput(
                "t grid must be finite and nonzero".into(),
            ));
        }
        Ok(AsymptoticCase {
            direction,
            alpha,
            t_grid,
        })
    }

    pub fn with_defaults(direction: Direction) -> Self {
        AsymptoticCase {
            direction,
            alpha: 0.5,
            t_grid: DEFAULT_T_GRID.to_vec(),
        }
    }

    pub fn r_t(&self, t: f64) -> Vector2 {
        match self.direction {
            Direction::Spacelike | Direction::Timelike => {
                (t.abs().powf(-self.alpha) / 2f64.sqrt()) * Vector2::new(1.0, 1.0)
            }
            Direction::LightlikePlus | Direction::LightlikeMinus => Vector2::ZERO,
        }
    }

    /// Largest `‖r_t‖ |t|^α` over the grid.
    pub fn decay_constant(&self) -> f64 {
        self.t_grid
            .iter()
            .map(|&t| self.r_t(t).norm() * t.abs().powf(self.alpha))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub t: f64,
    pub lhs: (f64, f64),
    pub rhs: (f64, f64),
    pub residual: f64,
    pub quad_error: f64,
}

impl AsymptoticRow {
    pub fn lhs(&self) -> Complex64 {
        Complex64::new(self.lhs.0, self.lhs.1)
    }

    pub fn rhs(&self) -> Complex64 {
        Complex64::new(self.rhs.0, self.rhs.1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticTable {
    pub direction: Direction,
    pub rows: Vec<AsymptoticRow>,
    /// Least-squares slope of `ln residual` against `ln |t|`.
    pub slope: f64,
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Compare `∫ w_reg(x - t(e + r_t)) f(x) d²x` with its leading large-`|t|`
/// behaviour at each `t` of the case.
pub fn translation_asymptotics(
    case: &AsymptoticCase,
    f: &TestFunction,
    params: &KernelParams,
    spec: &QuadSpec,
    grid: &GridSpec,
) -> Result<AsymptoticTable> {
    let c = Correlation::from_density(f, grid)?;
    let q = f.charge()?;
    let mu = params.mu_v();
    let e = case.direction.unit();
    // For lightlike translations the kernel of the other chirality does not
    // see the shift and contributes a t-independent constant.
    let constant = match case.direction {
        Direction::LightlikePlus => {
            smeared_chiral(&c, Chirality::Minus, Vector2::ZERO, params, spec)?.value
        }
        Direction::LightlikeMinus => {
            smeared_chiral(&c, Chirality::Plus, Vector2::ZERO, params, spec)?.value
        }
        _ => Complex64::new(0.0, 0.0),
    };
    let rows: Vec<AsymptoticRow> = case
        .t_grid
        .par_iter()
        .map(|&t| {
            let shift = -t * (e + case.r_t(t));
            let lhs = smeared_kernel(&c, shift, params, spec)?;
            let sgn = t.signum();
            let log = (t.abs() * mu).ln();
            let rhs = match case.direction {
                Direction::Spacelike => Complex64::new(-2.0 * log * q / (4.0 * PI), 0.0),
                Direction::Timelike => {
                    Complex64::new(log, -sgn * PI / 2.0) * (-2.0 * q / (4.0 * PI))
                }
                Direction::LightlikePlus | Direction::LightlikeMinus => {
                    constant
                        - Complex64::new((2.0 * mu * t.abs()).ln(), -sgn * PI / 2.0)
                            * (q / (4.0 * PI))
                }
            };
            Ok(AsymptoticRow {
                t,
                lhs: (lhs.value.re, lhs.value.im),
                rhs: (rhs.re, rhs.im),
                residual: (lhs.value - rhs).norm(),
                quad_error: lhs.error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lx: Vec<f64> = rows.iter().map(|r| r.t.abs().ln()).collect();
    let ly: Vec<f64> = rows
        .iter()
        .map(|r| r.residual.max(f64::MIN_POSITIVE).ln())
        .collect();
    let slope = if rows.len() >= 2 {
        fit_slope(&lx, &ly)
    } else {
        f64::NAN
    };
    Ok(AsymptoticTable {
        direction: case.direction,
        rows,
        slope,
    })
}
