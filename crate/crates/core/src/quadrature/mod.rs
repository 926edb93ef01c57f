//! Adaptive quadrature in one and two dimensions.
//!
//! Integrands are complex valued. Logarithmic singularities along straight
//! lines are handled by pre-splitting the domain and grading panels toward the
//! singular locus; oscillatory tails in 1d by cutoff extrapolation.

mod adaptive;
mod gauss;
mod oscillatory;
mod plane;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use adaptive::{initial_mesh, integrate_1d, integrate_with_errors, Tolerance, GRADING_RATIO};
pub use gauss::{GaussKronrod, GaussLegendre};
pub use oscillatory::{default_cutoffs, integrate_1d_oscillatory, OscillatoryResult};
pub use plane::{integrate_2d, integrate_2d_with_breaks};

/// Rule order and tolerances for adaptive quadrature.
#[derive(Debug, Clone)]
pub struct QuadSpec {
    base_order: usize,
    pub max_depth: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    rule: Arc<GaussKronrod>,
}

fn cached_rule(n: usize) -> Arc<GaussKronrod> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussKronrod>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    map.entry(n)
        .or_insert_with(|| Arc::new(GaussKronrod::new(n)))
        .clone()
}

impl QuadSpec {
    pub fn new(base_order: usize, max_depth: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if base_order < 4 {
            return Err(Error::InvalidInput(format!(
                "base_order must be >= 4, got {base_order}"
            )));
        }
        if base_order > 64 {
            return Err(Error::InvalidInput(format!(
                "base_order must be <= 64, got {base_order}"
            )));
        }
        if max_depth < 1 {
            return Err(Error::InvalidInput("max_depth must be >= 1".into()));
        }
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be positive, got abs {abs_tol}, rel {rel_tol}"
            )));
        }
        Ok(QuadSpec {
            base_order,
            max_depth,
            abs_tol,
            rel_tol,
            rule: cached_rule(base_order),
        })
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// The Gauss–Kronrod pair built on `base_order` Gauss points.
    pub fn rule(&self) -> &GaussKronrod {
        &self.rule
    }

    pub fn with_tolerances(&self, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        QuadSpec::new(self.base_order, self.max_depth, abs_tol, rel_tol)
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
        }
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec::new(12, 10, 1e-10, 1e-9).expect("default spec is valid")
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    /// False when `max_depth` or the panel budget ran out before the
    /// tolerance was met; `value` is then the best available estimate.
    pub converged: bool,
    pub evaluations: usize,
}

impl QuadResult {
    pub fn exact(value: Complex64) -> Self {
        QuadResult {
            value,
            error: 0.0,
            converged: true,
            evaluations: 0,
        }
    }

    /// Turn a non-converged result into an error carrying the achieved estimate.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                value: self.value,
                error: self.error,
            })
        }
    }
}

/// Orientation of a straight line along which an integrand may diverge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineKind {
    /// `z0 + z1 = offset`
    XPlusConst,
    /// `z0 - z1 = offset`
    XMinusConst,
    /// `z0 = offset`
    X0Const,
    /// `z1 = offset`
    X1Const,
}

/// A line in the plane on which the integrand has a logarithmic singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularLine {
    pub kind: LineKind,
    pub offset: f64,
}

impl SingularLine {
    pub fn x_plus(offset: f64) -> Self {
        SingularLine {
            kind: LineKind::XPlusConst,
            offset,
        }
    }
    pub fn x_minus(offset: f64) -> Self {
        SingularLine {
            kind: LineKind::XMinusConst,
            offset,
        }
    }
    pub fn x0(offset: f64) -> Self {
        SingularLine {
            kind: LineKind::X0Const,
            offset,
        }
    }
    pub fn x1(offset: f64) -> Self {
        SingularLine {
            kind: LineKind::X1Const,
            offset,
        }
    }

    /// Where the line crosses a fixed-`z0` slice, if it is not itself such a slice.
    pub fn z1_at(&self, z0: f64) -> Option<f64> {
        match self.kind {
            LineKind::XPlusConst => Some(self.offset - z0),
            LineKind::XMinusConst => Some(z0 - self.offset),
            LineKind::X1Const => Some(self.offset),
            LineKind::X0Const => None,
        }
    }
}
