//! Closed forms of the regularized two-point function and its relatives.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::KernelParams;
use crate::error::{Error, Result};
use crate::geometry::Vector2;

/// Which light-cone coordinate a chiral kernel depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// Depends on `x^+ = x0 + x1`.
    Plus,
    /// Depends on `x^- = x0 - x1`.
    Minus,
}

impl Chirality {
    pub fn coordinate(&self, z: Vector2) -> f64 {
        match self {
            Chirality::Plus => z.x_plus(),
            Chirality::Minus => z.x_minus(),
        }
    }

    pub fn opposite(&self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// `(-1/4π)[ln(μ|u|) + sgn(u) iπ/2]` without the `u = 0` check.
pub(crate) fn chiral(u: f64, mu: f64) -> Complex64 {
    let s = if u > 0.0 { 1.0 } else { -1.0 };
    Complex64::new(-(mu * u.abs()).ln() / (4.0 * PI), -s / 8.0)
}

/// `(-1/4π)[ln(μ²|z²|) + θ(z²) sgn(z0) iπ]`.
pub fn w_reg_point(z: Vector2, params: &KernelParams) -> Result<Complex64> {
    let (p, m) = (z.x_plus(), z.x_minus());
    if p == 0.0 || m == 0.0 {
        return Err(Error::Singular((z.x0, z.x1)));
    }
    let mu = params.mu_v();
    let sq = p * m;
    let phase = if sq > 0.0 { z.x0.signum() * PI } else { 0.0 };
    Ok(Complex64::new(-(mu * mu * sq.abs()).ln(), -phase) / (4.0 * PI))
}

/// `(-1/4π)[ln(μ|u|) + sgn(u) iπ/2]`, the kernel of one chirality at the
/// light-cone coordinate `u`.
pub fn w_chiral_point(u: f64, params: &KernelParams) -> Result<Complex64> {
    if u == 0.0 {
        return Err(Error::Singular((u, u)));
    }
    Ok(chiral(u, params.mu_v()))
}

/// `w_reg(z) - w_reg(-z) = -(i/2) θ(z²) sgn(z0)`.
pub fn commutator_point(z: Vector2) -> Result<Complex64> {
    let (p, m) = (z.x_plus(), z.x_minus());
    if p == 0.0 || m == 0.0 {
        return Err(Error::Singular((z.x0, z.x1)));
    }
    let v = if p * m > 0.0 {
        -0.5 * z.x0.signum()
    } else {
        0.0
    };
    Ok(Complex64::new(0.0, v))
}
