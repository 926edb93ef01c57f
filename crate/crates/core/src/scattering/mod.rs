//! The amplitude `S_T` of two charged functions `f` and `g`, its large-`T`
//! limit, and the decay of overlaps along light rays.
//!
//! Four factors enter, `:W(-g):` and `:W(-f):` moved forward along opposite
//! light rays and `:W(f):`, `:W(g):` moved backward:
//!
//! ```text
//! S_T = <W1 W2 W3 W4>_h / (<W1 W4>_h <W2 W3>_h)
//! ```
//!
//! where `<·>_h` averages each factor's time `T + s(T) t` against `h(t)`.

mod amplitude;
mod extrapolate;
mod neutrality;

pub use amplitude::{
    cancellation_audit, pair_table, run_amplitude, s_t, AmplitudeRun, CancellationAudit,
    PairCorrelations, TSample, DENOMINATOR_FLOOR, PAIRS,
};
pub use extrapolate::{extrapolate, AmplitudeSample, AmplitudeSeries};
pub use neutrality::{neutrality_decay, NeutralityRow, NeutralityTable};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::kernel::KernelParams;
use crate::quadrature::QuadSpec;
use crate::testfn::{scale, GridSpec, SmearingKernel, TestFunction};
use crate::weyl::WeylFactor;

pub const DEFAULT_H_ORDER: usize = 6;

/// `e^{-i q_f q_g / 2}`.
pub fn target_amplitude(qf_qg: f64) -> Complex64 {
    Complex64::from_polar(1.0, -0.5 * qf_qg)
}

/// Inputs of an amplitude run.
#[derive(Debug, Clone)]
pub struct CollisionConfig {
    pub f: TestFunction,
    pub g: TestFunction,
    pub h: SmearingKernel,
    pub t_grid: Vec<f64>,
    /// Gauss points per time axis.
    pub h_quad_order: usize,
    pub params: KernelParams,
    pub spec: QuadSpec,
    pub grid: GridSpec,
}

impl CollisionConfig {
    pub fn new(
        f: TestFunction,
        g: TestFunction,
        t_grid: Vec<f64>,
        h_quad_order: usize,
        params: KernelParams,
        spec: QuadSpec,
        grid: GridSpec,
    ) -> Result<Self> {
        let cfg = CollisionConfig {
            f,
            g,
            h: SmearingKernel::new(),
            t_grid,
            h_quad_order,
            params,
            spec,
            grid,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_grid.is_empty() {
            return Err(Error::InvalidInput("T grid is empty".into()));
        }
        if let Some(t) = self
            .t_grid
            .iter()
            .find(|&&t| !(t > std::f64::consts::E) || !t.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "every T must exceed e, got {t}"
            )));
        }
        if self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "T grid must be strictly increasing".into(),
            ));
        }
        if self.h_quad_order < 3 {
            return Err(Error::InvalidInput(format!(
                "h quadrature order must be at least 3, got {}",
                self.h_quad_order
            )));
        }
        self.grid.validate()
    }

    pub fn qf_qg(&self) -> Result<f64> {
        Ok(self.f.charge()? * self.g.charge()?)
    }

    pub fn target(&self) -> Result<Complex64> {
        Ok(target_amplitude(self.qf_qg()?))
    }
}

/// Which of the two functions a factor carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    F,
    G,
}

/// A factor before its time is fixed: `:W(sign · fn):` at
/// `orientation · τ · direction` with `τ = T + s(T) t`.
#[derive(Debug, Clone)]
pub struct FactorTemplate {
    pub which: Which,
    pub f: TestFunction,
    pub sign: f64,
    pub direction: Vector2,
    pub orientation: f64,
}

impl FactorTemplate {
    pub fn translation(&self, big_t: f64, t: f64) -> Vector2 {
        let tau = big_t + scale(big_t) * t;
        (self.orientation * tau) * self.direction
    }

    pub fn at(&self, big_t: f64, t: f64) -> WeylFactor {
        WeylFactor::new(self.f.clone(), self.translation(big_t, t), self.sign)
    }

    pub fn effective_charge(&self) -> Result<f64> {
        Ok(self.sign * self.f.charge()?)
    }
}

/// The four factors `-g` at `(τ1, -τ1)`, `-f` at `(τ2, τ2)`, `f` at
/// `-(τ3, τ3)` and `g` at `-(τ4, -τ4)`.
pub fn build_factors(f: &TestFunction, g: &TestFunction) -> [FactorTemplate; 4] {
    let minus = Vector2::new(1.0, -1.0);
    let plus = Vector2::new(1.0, 1.0);
    let t = |which, func: &TestFunction, sign, direction, orientation| FactorTemplate {
        which,
        f: func.clone(),
        sign,
        direction,
        orientation,
    };
    [
        t(Which::G, g, -1.0, minus, 1.0),
        t(Which::F, f, -1.0, plus, 1.0),
        t(Which::F, f, 1.0, plus, -1.0),
        t(Which::G, g, 1.0, minus, -1.0),
    ]
}
