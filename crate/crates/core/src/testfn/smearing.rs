//! The time-averaging profile `h` and its dilations `h_T`.

use num_complex::Complex64;

use super::function::mollifier;
use crate::quadrature::{integrate_1d, GaussLegendre, QuadSpec};

/// Symmetric mollifier on `[-1, 1]`, normalized to unit integral.
#[derive(Debug, Clone, Copy)]
pub struct SmearingKernel {
    norm: f64,
}

impl Default for SmearingKernel {
    fn default() -> Self {
        Self::new()
    }
}

impl SmearingKernel {
    pub fn new() -> Self {
        let spec = QuadSpec::new(16, 30, 1e-15, 1e-15).expect("valid spec");
        let r = integrate_1d(
            |t| Complex64::new(mollifier(t * t), 0.0),
            -1.0,
            1.0,
            &[],
            &[],
            &spec,
        );
        SmearingKernel { norm: r.value.re }
    }

    /// `∫ exp(-1/(1-t²)) dt` over `[-1, 1]`.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn eval(&self, t: f64) -> f64 {
        let a = t.abs();
        mollifier(a * a) / self.norm
    }

    /// `h_T(t) = h((t - T)/s(T)) / s(T)` with `s(T) = ln|T|`.
    pub fn eval_scaled(&self, t: f64, big_t: f64) -> f64 {
        let s = scale(big_t);
        self.eval((t - big_t) / s) / s
    }

    /// Gauss–Legendre nodes on `[-1, 1]` with weights `w_i h(t_i)`,
    /// renormalized so that the weights sum to one.
    pub fn nodes(&self, order: usize) -> (Vec<f64>, Vec<f64>) {
        let gl = GaussLegendre::new(order);
        let mut w: Vec<f64> = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(&t, &w)| w * self.eval(t))
            .collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        (gl.nodes, w)
    }
}

/// The averaging width `s(T) = ln|T|`.
pub fn scale(big_t: f64) -> f64 {
    big_t.abs().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_normalized() {
        let h = SmearingKernel::new();
        for t in [0.1, 0.5, 0.93] {
            assert_eq!(h.eval(t), h.eval(-t));
        }
        assert_eq!(h.eval(1.0), 0.0);
        let big_t = 50.0;
        let s = scale(big_t);
        let spec = QuadSpec::new(16, 30, 1e-14, 1e-14).unwrap();
        let r = integrate_1d(
            |t| Complex64::new(h.eval_scaled(t, big_t), 0.0),
            big_t - s,
            big_t + s,
            &[],
            &[],
            &spec,
        );
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let (_, w) = h.nodes(6);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
