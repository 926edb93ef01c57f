//! The regularized two-point function of the massless field in 2d.
//!
//! `w_reg(x) = (-1/4π) ln(-μ_v² x² + iεx⁰)` in the limit `ε ↓ 0`, where the
//! scale `μ_v` is fixed by the infrared regulator `v`.

mod closed;
mod regulator;
mod smeared;
mod spectral;

pub use closed::{commutator_point, w_chiral_point, w_reg_point, Chirality};
pub use regulator::{HolderBound, Regulator};
pub use smeared::{smeared_chiral, smeared_commutator, smeared_kernel, smeared_kernel_2d};
pub use spectral::{
    fit_mu, spectral_i, spectral_smeared_oracle, MuFit, SpectralValue, MU_RESIDUAL_LIMIT,
};

use crate::error::{Error, Result};
use crate::quadrature::QuadSpec;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default grid for [`fit_mu`].
pub const DEFAULT_U_GRID: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// Scale of the regularized kernel. Logarithms use the principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    mu_v: f64,
}

impl KernelParams {
    pub fn new(mu_v: f64) -> Result<Self> {
        if !(mu_v > 0.0 && mu_v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "mu_v must be positive, got {mu_v}"
            )));
        }
        Ok(KernelParams { mu_v })
    }

    /// The sharp cutoff at `|p¹| = 1`, for which `μ_v = e^γ`.
    pub fn canonical() -> Self {
        KernelParams {
            mu_v: EULER_GAMMA.exp(),
        }
    }

    /// Fit `μ_v` for a regulator on [`DEFAULT_U_GRID`].
    pub fn from_regulator(v: &Regulator, spec: &QuadSpec) -> Result<Self> {
        let fit = fit_mu(v, &DEFAULT_U_GRID, spec)?;
        if fit.flagged {
            return Err(Error::InvalidInput(format!(
                "regulator fails the log-law fit: residual {:.3e}",
                fit.residual
            )));
        }
        KernelParams::new(fit.mu_v)
    }

    pub fn mu_v(&self) -> f64 {
        self.mu_v
    }
}
