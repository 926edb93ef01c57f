//! Semi-infinite integrals with an oscillatory, slowly decaying tail.
//!
//! The integral is computed on `[lower, K]` for an increasing sequence of
//! cutoffs, each snapped to a whole number of oscillation periods so that the
//! remaining tail expands in integer powers of `1/K`. Neville's scheme then
//! extrapolates the partial integrals to `1/K = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::adaptive::{integrate_with_errors, Tolerance};
use super::QuadSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct OscillatoryResult {
    pub value: Complex64,
    pub error: f64,
    /// False when the extrapolated sequence did not settle within tolerance
    /// or a partial integral failed to converge.
    pub converged: bool,
    pub cutoffs: Vec<f64>,
    pub partials: Vec<Complex64>,
    pub evaluations: usize,
}

/// Six cutoffs `2^j n0 P`, with `P` the period for `frequency` and `n0`
/// the smallest whole number of periods (at least 4) reaching `min_cutoff`.
/// For zero frequency the sequence is `min_cutoff * 2^j`.
pub fn default_cutoffs(frequency: f64, min_cutoff: f64) -> Vec<f64> {
    if frequency == 0.0 {
        return (0..6).map(|j| min_cutoff * f64::powi(2.0, j)).collect();
    }
    let period = 2.0 * PI / frequency.abs();
    let n0 = (min_cutoff / period).ceil().max(4.0);
    (0..6).map(|j| f64::powi(2.0, j) * n0 * period).collect()
}

fn snap_cutoffs(cutoffs: &[f64], lower: f64, frequency: f64) -> Vec<f64> {
    let mut ks: Vec<f64> = cutoffs
        .iter()
        .map(|&k| {
            if frequency == 0.0 {
                return k;
            }
            let period = 2.0 * PI / frequency.abs();
            let n = k / period;
            let r = n.round();
            if (n - r).abs() <= 1e-9 * n.max(1.0) {
                r * period
            } else {
                n.ceil() * period
            }
        })
        .filter(|&k| k > lower)
        .collect();
    ks.sort_by(f64::total_cmp);
    ks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    ks
}

/// Integrate `f` over `[lower, ∞)`, where the tail of `f` oscillates with
/// angular frequency `frequency` and decays like a power of `1/k`.
pub fn integrate_1d_oscillatory<F>(
    mut f: F,
    lower: f64,
    frequency: f64,
    cutoffs: &[f64],
    breaks: &[f64],
    singular: &[f64],
    spec: &QuadSpec,
) -> OscillatoryResult
where
    F: FnMut(f64) -> Complex64,
{
    let ks = snap_cutoffs(cutoffs, lower, frequency);
    let mut partials = Vec::with_capacity(ks.len());
    let mut quad_err = 0.0;
    let mut evaluations = 0;
    let mut all_converged = true;
    let segment_tol = Tolerance {
        abs: spec.abs_tol / (ks.len().max(1) as f64),
        rel: spec.rel_tol,
    };

    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = lower;
    for &k in &ks {
        let mut seg_breaks: Vec<f64> = breaks
            .iter()
            .copied()
            .filter(|&b| b > prev && b < k)
            .collect();
        if frequency != 0.0 {
            let period = 2.0 * PI / frequency.abs();
            let first = (prev / period).floor() as i64 + 1;
            let last = (k / period).round() as i64;
            seg_breaks.extend((first..last).map(|n| n as f64 * period));
        }
        let r = integrate_with_errors(
            |x| (f(x), 0.0),
            prev,
            k,
            &seg_breaks,
            singular,
            spec,
            segment_tol,
        );
        acc += r.value;
        quad_err += r.error;
        evaluations += r.evaluations;
        all_converged &= r.converged;
        partials.push(acc);
        prev = k;
    }

    let (value, extrap_err) = match partials.len() {
        0 => (Complex64::new(0.0, 0.0), 0.0),
        1 => (partials[0], f64::INFINITY),
        n if frequency == 0.0 => (partials[n - 1], (partials[n - 1] - partials[n - 2]).norm()),
        _ => neville_at_zero(&ks, &partials),
    };
    let error = extrap_err + quad_err;
    let target = spec.abs_tol.max(spec.rel_tol * value.norm());
    OscillatoryResult {
        value,
        error,
        converged: all_converged && extrap_err <= target,
        cutoffs: ks,
        partials,
        evaluations,
    }
}

/// Polynomial extrapolation of `values(1/k)` to zero; the error estimate is
/// the change from dropping the smallest cutoff.
fn neville_at_zero(ks: &[f64], values: &[Complex64]) -> (Complex64, f64) {
    let h: Vec<f64> = ks.iter().map(|k| 1.0 / k).collect();
    let n = h.len();
    let mut p = values.to_vec();
    let mut prev_best = p[n - 1];
    for m in 1..n {
        for i in 0..n - m {
            // p[i] becomes the interpolant through points i..=i+m, at h = 0.
            p[i] = (p[i + 1] * h[i] - p[i] * h[i + m]) / (h[i] - h[i + m]);
        }
        if m == n - 2 {
            prev_best = p[1];
        }
    }
    if n == 2 {
        prev_best = values[1];
    }
    (p[0], (p[0] - prev_best).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_integral() {
        let spec = QuadSpec::default();
        let r = integrate_1d_oscillatory(
            |k| Complex64::new(if k == 0.0 { 1.0 } else { k.sin() / k }, 0.0),
            0.0,
            1.0,
            &default_cutoffs(1.0, 10.0),
            &[],
            &[],
            &spec,
        );
        assert!((r.value.re - PI / 2.0).abs() < 1e-8, "{:?}", r);
        assert!(r.converged);
    }

    #[test]
    fn zero_integrand_is_zero() {
        let spec = QuadSpec::default();
        let r = integrate_1d_oscillatory(
            |_| Complex64::new(0.0, 0.0),
            0.0,
            0.0,
            &[1.0, 2.0, 4.0],
            &[],
            &[],
            &spec,
        );
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert!(r.converged);
    }

    #[test]
    fn cutoffs_snap_to_periods() {
        let ks = snap_cutoffs(&[10.0, 3.0, 20.0], 0.0, 1.0);
        for k in &ks {
            let n = k / (2.0 * PI);
            assert!((n - n.round()).abs() < 1e-12);
        }
        assert_eq!(ks.len(), 3);
    }

    #[test]
    fn neville_reproduces_polynomial_in_inverse_cutoff() {
        let ks = [1.0, 2.0, 4.0, 8.0];
        let vals: Vec<Complex64> = ks
            .iter()
            .map(|k| Complex64::new(3.0 + 2.0 / k - 1.0 / (k * k), 1.0 / (k * k * k)))
            .collect();
        let (v, _) = neville_at_zero(&ks, &vals);
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }
}
