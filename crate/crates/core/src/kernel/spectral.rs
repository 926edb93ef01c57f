//! Momentum-space representation of the regularized kernel: the integral
//! `I(u)`, the scale `μ_v` it defines, and an independent evaluation of
//! smeared kernels from Fourier transforms on the massless shell.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::Regulator;
use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::kernel::Chirality;
use crate::quadrature::{
    default_cutoffs, integrate_1d, integrate_1d_oscillatory, GaussLegendre, QuadSpec,
};
use crate::testfn::TestFunction;

/// A value obtained by tail extrapolation or truncation, with its flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralValue {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
}

/// `I(u) = ∫_0^∞ (v(k) - e^{-iku}) dk/k`.
pub fn spectral_i(u: f64, v: &Regulator, spec: &QuadSpec) -> Result<SpectralValue> {
    if u == 0.0 {
        return Err(Error::InvalidInput("I(u) is singular at u = 0".into()));
    }
    v.validate()?;
    let integrand = |k: f64| {
        let s = (0.5 * k * u).sin();
        Complex64::new((v.eval(k) - 1.0 + 2.0 * s * s) / k, (k * u).sin() / k)
    };
    let min_cutoff = (1.5 * v.effective_support()).max(8.0 / u.abs());
    let r = integrate_1d_oscillatory(
        integrand,
        0.0,
        u.abs(),
        &default_cutoffs(u.abs(), min_cutoff),
        &v.breakpoints(),
        &[],
        spec,
    );
    Ok(SpectralValue {
        value: r.value,
        error: r.error,
        converged: r.converged,
    })
}

/// Outcome of fitting `Re I(u) = ln(μ_v u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuFit {
    pub mu_v: f64,
    /// Largest deviation of `Re I(u)` from `ln(μ_v u)` on the grid.
    pub residual: f64,
    pub u_grid: Vec<f64>,
    /// Set when the residual exceeds 1e-4 or an integral failed to settle.
    pub flagged: bool,
}

pub const MU_RESIDUAL_LIMIT: f64 = 1e-4;

pub fn fit_mu(v: &Regulator, u_grid: &[f64], spec: &QuadSpec) -> Result<MuFit> {
    let us: Vec<f64> = u_grid.iter().copied().filter(|&u| u > 0.0).collect();
    if us.len() < 3 {
        return Err(Error::InvalidInput(
            "fit_mu needs at least three positive u values".into(),
        ));
    }
    let values: Vec<SpectralValue> = us
        .par_iter()
        .map(|&u| spectral_i(u, v, spec))
        .collect::<Result<Vec<_>>>()?;
    let offsets: Vec<f64> = us
        .iter()
        .zip(&values)
        .map(|(u, i)| i.value.re - u.ln())
        .collect();
    let ln_mu = offsets.iter().sum::<f64>() / offsets.len() as f64;
    let residual = offsets
        .iter()
        .map(|o| (o - ln_mu).abs())
        .fold(0.0, f64::max);
    let flagged = residual > MU_RESIDUAL_LIMIT || values.iter().any(|i| !i.converged);
    Ok(MuFit {
        mu_v: ln_mu.exp(),
        residual,
        u_grid: us,
        flagged,
    })
}

/// A light-cone marginal of a test function on composite Gauss nodes, with
/// the quadrature weights folded in.
struct ShellTransform {
    nodes: Vec<f64>,
    weighted: Vec<f64>,
}

impl ShellTransform {
    fn new(f: &TestFunction, c: Chirality, k_max: f64) -> Result<Self> {
        let b = f.support_box();
        let ((ulo, uhi), (vlo, vhi)) = match c {
            Chirality::Plus => (b.plus_range(), b.minus_range()),
            Chirality::Minus => (b.minus_range(), b.plus_range()),
        };
        let width = uhi - ulo;
        let panels = ((width * k_max / 3.0).ceil() as usize).max(64);
        let gl = GaussLegendre::new(16);
        let spec = QuadSpec::new(10, 20, 1e-15, 1e-13)?;
        let h = width / panels as f64;
        let mut nodes = Vec::with_capacity(panels * 16);
        let mut weighted = Vec::with_capacity(panels * 16);
        for p in 0..panels {
            let a = ulo + p as f64 * h;
            for (u, w) in gl.on_interval(a, a + h) {
                let point = |v: f64| match c {
                    Chirality::Plus => Vector2::new(0.5 * (u + v), 0.5 * (u - v)),
                    Chirality::Minus => Vector2::new(0.5 * (u + v), 0.5 * (v - u)),
                };
                let r = integrate_1d(
                    |v| Complex64::new(f.evaluate(point(v)), 0.0),
                    vlo,
                    vhi,
                    &[],
                    &[],
                    &spec,
                );
                nodes.push(u);
                weighted.push(w * 0.5 * r.value.re);
            }
        }
        Ok(ShellTransform { nodes, weighted })
    }

    /// `∫ f(x) e^{i k x^c} d²x`.
    fn at(&self, k: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&u, &w) in self.nodes.iter().zip(&self.weighted) {
            let (s, c) = (k * u).sin_cos();
            acc += Complex64::new(w * c, w * s);
        }
        acc
    }
}

/// Momentum beyond which the transforms of bumps of feature size `r` are
/// negligible at double precision.
fn transform_cutoff(r: f64) -> f64 {
    200.0 / r
}

/// `∫∫ f(x) w(x - y + shift) g(y)` from the spectral representation
/// `(1/4π) Σ_± ∫_0^∞ dk/k [f̂_±(-k) ĝ_±(k) e^{-ik shift^±} - v(k) q_f q_g]`.
pub fn spectral_smeared_oracle(
    f: &TestFunction,
    g: &TestFunction,
    shift: Vector2,
    v: &Regulator,
    spec: &QuadSpec,
) -> Result<SpectralValue> {
    v.validate()?;
    let k_end = transform_cutoff(f.feature_size().min(g.feature_size())).max(v.effective_support());
    let parts: Vec<SpectralValue> = [Chirality::Plus, Chirality::Minus]
        .par_iter()
        .map(|&c| {
            let tf = ShellTransform::new(f, c, k_end)?;
            let tg = ShellTransform::new(g, c, k_end)?;
            let qq = tf.at(0.0).re * tg.at(0.0).re;
            let s = c.coordinate(shift);
            let integrand = |k: f64| {
                let phase = Complex64::from_polar(1.0, -k * s);
                (tf.at(-k) * tg.at(k) * phase - v.eval(k) * qq) / k
            };
            let mut breaks = v.breakpoints();
            if s != 0.0 {
                let period = 2.0 * PI / s.abs();
                let n = (k_end / period) as usize;
                if n <= 2000 {
                    breaks.extend((1..=n).map(|j| j as f64 * period));
                }
            }
            let r = integrate_1d(integrand, 0.0, k_end, &breaks, &[], spec);
            // Beyond k_end only the regulator term can survive.
            let tail = (v.eval(k_end) * qq).abs();
            Ok(SpectralValue {
                value: r.value,
                error: r.error + tail,
                converged: r.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = (parts[0].value + parts[1].value) / (4.0 * PI);
    Ok(SpectralValue {
        value: total,
        error: (parts[0].error + parts[1].error) / (4.0 * PI),
        converged: parts.iter().all(|p| p.converged),
    })
}
