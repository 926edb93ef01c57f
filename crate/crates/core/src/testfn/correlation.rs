//! Cross-correlations `C(z) = ∫ f(z+y) g(y) d²y` of test functions.
//!
//! Both functions are sampled on lattices of a common spacing and the
//! discrete correlation (a trapezoid sum, spectrally accurate for smooth
//! compactly supported integrands) is formed by zero-padded FFT. The result
//! is kept in two forms: a coarse grid of values and spectral derivatives for
//! bicubic Hermite interpolation, and the two light-cone marginals
//! `∫ C(z) δ(z^± - u) d²z` on the fine lattice.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use super::fft2::{angular_frequencies, fast_len, fft2};
use super::function::TestFunction;
use crate::error::{Error, Result};
use crate::geometry::{Rect, Vector2};
use crate::quadrature::{integrate_with_errors, QuadResult, QuadSpec, Tolerance};

/// Minimum coarse-grid samples per bump radius.
pub const MIN_SAMPLES_PER_RADIUS: f64 = 8.0;

/// Resolution of correlation grids.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Coarse samples across the longer side of the support box.
    pub resolution: usize,
    /// Fine lattice points per coarse cell, per axis.
    pub oversample: usize,
    /// Upper bound for the resolution, which is raised automatically until
    /// the narrowest feature spans enough coarse cells.
    #[serde(default = "default_max_resolution")]
    pub max_resolution: usize,
}

fn default_max_resolution() -> usize {
    256
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            resolution: 64,
            oversample: 8,
            max_resolution: default_max_resolution(),
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 8 {
            return Err(Error::InvalidInput(format!(
                "grid resolution must be at least 8, got {}",
                self.resolution
            )));
        }
        if self.oversample < 1 {
            return Err(Error::InvalidInput("oversample must be at least 1".into()));
        }
        if self.max_resolution < self.resolution {
            return Err(Error::InvalidInput(
                "max_resolution is below resolution".into(),
            ));
        }
        Ok(())
    }

    /// Coarse spacing for a box of largest side `width` holding features of
    /// size `feature`.
    pub fn spacing(&self, width: f64, feature: f64) -> Result<f64> {
        let needed = (MIN_SAMPLES_PER_RADIUS * width / feature).ceil() as usize + 1;
        let n = self.resolution.max(needed);
        if n > self.max_resolution {
            return Err(Error::GridTooCoarse(
                feature * (self.max_resolution - 1) as f64 / width,
            ));
        }
        Ok(width / (n - 1) as f64)
    }
}

/// A light-cone marginal sampled on a uniform lattice, interpolated by
/// degree-9 Lagrange polynomials on sliding stencils and zero outside.
#[derive(Debug, Clone)]
pub struct Marginal {
    origin: f64,
    step: f64,
    values: Arc<Vec<f64>>,
}

const STENCIL: usize = 10;

fn barycentric_weights() -> [f64; STENCIL] {
    let mut w = [0.0; STENCIL];
    let mut binom = 1.0;
    for (j, wj) in w.iter_mut().enumerate() {
        *wj = if j % 2 == 0 { binom } else { -binom };
        binom = binom * (STENCIL - 1 - j) as f64 / (j + 1) as f64;
    }
    w
}

impl Marginal {
    fn new(origin: f64, step: f64, values: Vec<f64>) -> Self {
        // Trim exact zeros at both ends.
        let first = values.iter().position(|&v| v != 0.0).unwrap_or(0);
        let last = values.iter().rposition(|&v| v != 0.0).unwrap_or(0);
        let lo = first.saturating_sub(1);
        let hi = (last + 2).min(values.len());
        Marginal {
            origin: origin + lo as f64 * step,
            step,
            values: Arc::new(values[lo..hi.max(lo)].to_vec()),
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn node(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.step
    }

    /// Interval outside of which the marginal vanishes.
    pub fn range(&self) -> (f64, f64) {
        (self.origin, self.node(self.values.len().saturating_sub(1)))
    }

    /// `∫ M(u) du` by the trapezoid rule on the lattice.
    pub fn integral(&self) -> f64 {
        self.step * self.values.iter().sum::<f64>()
    }

    fn value_at(&self, k: isize) -> f64 {
        if k < 0 || k as usize >= self.values.len() {
            0.0
        } else {
            self.values[k as usize]
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        let s = (u - self.origin) / self.step;
        let n = self.values.len() as f64;
        if !(s > -1.0 && s < n) {
            return 0.0;
        }
        let k = s.floor() as isize;
        let start = k - (STENCIL as isize / 2 - 1);
        let w = barycentric_weights();
        let mut num = 0.0;
        let mut den = 0.0;
        for (j, wj) in w.iter().enumerate() {
            let idx = start + j as isize;
            let d = s - idx as f64;
            if d == 0.0 {
                return self.value_at(idx);
            }
            let t = wj / d;
            num += t * self.value_at(idx);
            den += t;
        }
        num / den
    }

    fn reflected(&self) -> Self {
        let mut v = (*self.values).clone();
        v.reverse();
        let (_, hi) = self.range();
        Marginal {
            origin: -hi,
            step: self.step,
            values: Arc::new(v),
        }
    }

    fn translated(&self, a: f64) -> Self {
        Marginal {
            origin: self.origin + a,
            ..self.clone()
        }
    }

    fn scaled(&self, k: f64) -> Self {
        Marginal {
            values: Arc::new(self.values.iter().map(|v| k * v).collect()),
            ..self.clone()
        }
    }

    /// `∫ kernel(u) M(u) du`, breaking at every lattice node so each panel
    /// sees a single interpolating polynomial, and grading toward `singular`.
    pub fn integrate_against<K>(
        &self,
        kernel: K,
        singular: &[f64],
        tol: Tolerance,
        spec: &QuadSpec,
    ) -> QuadResult
    where
        K: Fn(f64) -> Complex64,
    {
        if self.values.len() < 2 {
            return QuadResult::exact(Complex64::new(0.0, 0.0));
        }
        let (lo, hi) = self.range();
        let breaks: Vec<f64> = (1..self.values.len() - 1).map(|k| self.node(k)).collect();
        integrate_with_errors(
            |u| {
                let m = self.eval(u);
                if m == 0.0 {
                    (Complex64::new(0.0, 0.0), 0.0)
                } else {
                    (kernel(u) * m, 0.0)
                }
            },
            lo,
            hi,
            &breaks,
            singular,
            spec,
            tol,
        )
    }
}

/// A correlation function with compact support, ready for interpolation and
/// for light-cone integration.
#[derive(Debug, Clone)]
pub struct Correlation {
    origin: Vector2,
    spacing: f64,
    n0: usize,
    n1: usize,
    values: Arc<Vec<f64>>,
    d0: Arc<Vec<f64>>,
    d1: Arc<Vec<f64>>,
    d01: Arc<Vec<f64>>,
    plus: Marginal,
    minus: Marginal,
    integral: f64,
    interpolation_error: f64,
}

struct Lattice {
    origin: Vector2,
    h: f64,
    n0: usize,
    n1: usize,
    values: Vec<f64>,
}

fn lattice_dims(rect: &Rect, h: f64) -> (usize, usize) {
    (
        (rect.width0() / h).ceil() as usize + 1,
        (rect.width1() / h).ceil() as usize + 1,
    )
}

impl Correlation {
    /// `C(z) = ∫ f(z+y) g(y) d²y`.
    pub fn correlate(f: &TestFunction, g: &TestFunction, grid: &GridSpec) -> Result<Self> {
        grid.validate()?;
        let bf = f.support_box();
        let bg = g.support_box();
        let d = bf.difference(&bg);
        let h = grid.spacing(
            d.width0().max(d.width1()),
            f.feature_size().min(g.feature_size()),
        )?;
        let hf = h / grid.oversample as f64;

        let (k0, k1) = lattice_dims(&bf, hf);
        let (j0, j1) = lattice_dims(&bg, hf);
        let fs = f.sample_lattice(bf.lo, hf, k0, k1);
        let gs = g.sample_lattice(bg.lo, hf, j0, j1);
        let (l0, l1) = (k0 + j0 - 1, k1 + j1 - 1);
        let (p0, p1) = (fast_len(l0), fast_len(l1));

        let pad = |src: &[f64], n0: usize, n1: usize| {
            let mut out = vec![Complex64::new(0.0, 0.0); p0 * p1];
            for i in 0..n0 {
                for j in 0..n1 {
                    out[i * p1 + j] = Complex64::new(src[i * n1 + j], 0.0);
                }
            }
            out
        };
        let mut a = pad(&fs, k0, k1);
        let mut b = pad(&gs, j0, j1);
        fft2(&mut a, p0, p1, FftDirection::Forward);
        fft2(&mut b, p0, p1, FftDirection::Forward);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y.conj();
        }
        fft2(&mut a, p0, p1, FftDirection::Inverse);
        let norm = hf * hf / (p0 * p1) as f64;

        // Lattice index p = m + (j - 1) for the lag m in -(j-1)..=(k-1).
        let mut values = vec![0.0; l0 * l1];
        for p in 0..l0 {
            let m0 = p as isize - (j0 as isize - 1);
            let r0 = m0.rem_euclid(p0 as isize) as usize;
            for q in 0..l1 {
                let m1 = q as isize - (j1 as isize - 1);
                let r1 = m1.rem_euclid(p1 as isize) as usize;
                values[p * l1 + q] = a[r0 * p1 + r1].re * norm;
            }
        }
        let origin = bf.lo - bg.lo - hf * Vector2::new((j0 - 1) as f64, (j1 - 1) as f64);
        let lattice = Lattice {
            origin,
            h: hf,
            n0: l0,
            n1: l1,
            values,
        };
        let mut c = Self::from_lattice(lattice, grid.oversample);

        let probes = [
            (0.5, 0.5),
            (0.37, 0.61),
            (0.62, 0.43),
            (0.45, 0.29),
            (0.71, 0.66),
        ];
        let mut worst: f64 = 0.0;
        for (s, t) in probes {
            let z = Vector2::new(d.lo.x0 + s * d.width0(), d.lo.x1 + t * d.width1());
            let direct: f64 = {
                let mut acc = 0.0;
                for i in 0..j0 {
                    for j in 0..j1 {
                        let gv = gs[i * j1 + j];
                        if gv != 0.0 {
                            let y = bg.lo + Vector2::new(i as f64 * hf, j as f64 * hf);
                            acc += f.evaluate(z + y) * gv;
                        }
                    }
                }
                acc * hf * hf
            };
            worst = worst.max((c.eval(z) - direct).abs());
        }
        c.interpolation_error = worst;
        Ok(c)
    }

    /// The density `f` itself as a correlation-like object, so that
    /// `∫ K(z + shift) C(z) d²z = ∫ K(x + shift) f(x) d²x`.
    pub fn from_density(f: &TestFunction, grid: &GridSpec) -> Result<Self> {
        grid.validate()?;
        let bf = f.support_box();
        let h = grid.spacing(bf.width0().max(bf.width1()), f.feature_size())?;
        let hf = h / grid.oversample as f64;
        let (n0, n1) = lattice_dims(&bf, hf);
        let values = f.sample_lattice(bf.lo, hf, n0, n1);
        let lattice = Lattice {
            origin: bf.lo,
            h: hf,
            n0,
            n1,
            values,
        };
        let mut c = Self::from_lattice(lattice, grid.oversample);
        let mut worst: f64 = 0.0;
        for (s, t) in [(0.5, 0.5), (0.37, 0.61), (0.62, 0.43)] {
            let z = Vector2::new(bf.lo.x0 + s * bf.width0(), bf.lo.x1 + t * bf.width1());
            worst = worst.max((c.eval(z) - f.evaluate(z)).abs());
        }
        c.interpolation_error = worst;
        Ok(c)
    }

    fn from_lattice(lat: Lattice, oversample: usize) -> Self {
        let Lattice {
            origin,
            h,
            n0: l0,
            n1: l1,
            values,
        } = lat;
        let integral = h * h * values.iter().sum::<f64>();

        // Light-cone marginals: M±(u) = h Σ_{diagonal} C.
        let mut plus = vec![0.0; l0 + l1 - 1];
        let mut minus = vec![0.0; l0 + l1 - 1];
        for p in 0..l0 {
            for q in 0..l1 {
                let v = values[p * l1 + q];
                plus[p + q] += v;
                minus[p + (l1 - 1) - q] += v;
            }
        }
        for v in plus.iter_mut().chain(minus.iter_mut()) {
            *v *= h;
        }
        let plus = Marginal::new(origin.x_plus(), h, plus);
        let minus = Marginal::new(origin.x0 - (origin.x1 + (l1 - 1) as f64 * h), h, minus);

        // Spectral derivatives on a padded periodic lattice.
        let (p0, p1) = (fast_len(l0 + 2), fast_len(l1 + 2));
        let mut spec = vec![Complex64::new(0.0, 0.0); p0 * p1];
        for p in 0..l0 {
            for q in 0..l1 {
                spec[p * p1 + q] = Complex64::new(values[p * l1 + q], 0.0);
            }
        }
        fft2(&mut spec, p0, p1, FftDirection::Forward);
        let w0 = angular_frequencies(p0, h);
        let w1 = angular_frequencies(p1, h);
        let inv = 1.0 / (p0 * p1) as f64;
        let derivative = |factor: &dyn Fn(f64, f64) -> Complex64| {
            let mut d = spec.clone();
            for i in 0..p0 {
                for j in 0..p1 {
                    d[i * p1 + j] *= factor(w0[i], w1[j]) * inv;
                }
            }
            fft2(&mut d, p0, p1, FftDirection::Inverse);
            d
        };
        let i = Complex64::new(0.0, 1.0);
        let dd0 = derivative(&|a, _| i * a);
        let dd1 = derivative(&|_, b| i * b);
        let dd01 = derivative(&|a, b| Complex64::new(-a * b, 0.0));

        let o = oversample;
        let n0 = (l0 - 1).div_ceil(o) + 1;
        let n1 = (l1 - 1).div_ceil(o) + 1;
        let pick = |src: &dyn Fn(usize, usize) -> f64| {
            let mut out = vec![0.0; n0 * n1];
            for a in 0..n0 {
                for b in 0..n1 {
                    let (p, q) = (a * o, b * o);
                    out[a * n1 + b] = if p < l0 && q < l1 { src(p, q) } else { 0.0 };
                }
            }
            out
        };
        let coarse = pick(&|p, q| values[p * l1 + q]);
        let c0 = pick(&|p, q| dd0[p * p1 + q].re);
        let c1 = pick(&|p, q| dd1[p * p1 + q].re);
        let c01 = pick(&|p, q| dd01[p * p1 + q].re);

        Correlation {
            origin,
            spacing: h * o as f64,
            n0,
            n1,
            values: Arc::new(coarse),
            d0: Arc::new(c0),
            d1: Arc::new(c1),
            d01: Arc::new(c01),
            plus,
            minus,
            integral,
            interpolation_error: 0.0,
        }
    }

    /// Rectangle covered by the coarse grid; `C` vanishes outside it.
    pub fn support_box(&self) -> Rect {
        let h = self.spacing;
        Rect::new(
            self.origin,
            self.origin + Vector2::new((self.n0 - 1) as f64 * h, (self.n1 - 1) as f64 * h),
        )
    }

    pub fn grid_spacing(&self) -> (f64, f64) {
        (self.spacing, self.spacing)
    }

    pub fn grid_shape(&self) -> (usize, usize) {
        (self.n0, self.n1)
    }

    /// Coarse samples, row-major in the `z0` index.
    pub fn sample_grid(&self) -> &[f64] {
        &self.values
    }

    /// Bicubic.
    pub fn interpolation_order(&self) -> usize {
        3
    }

    /// Largest deviation of the interpolant from direct lattice sums at a
    /// few probe points.
    pub fn interpolation_error(&self) -> f64 {
        self.interpolation_error
    }

    /// `∫ C(z) d²z`.
    pub fn integral(&self) -> f64 {
        self.integral
    }

    /// Marginal along `z^+ = z0 + z1`.
    pub fn plus_marginal(&self) -> &Marginal {
        &self.plus
    }

    /// Marginal along `z^- = z0 - z1`.
    pub fn minus_marginal(&self) -> &Marginal {
        &self.minus
    }

    /// Grid lines of the coarse grid, as breakpoints for piecewise quadrature.
    pub fn grid_lines(&self) -> (Vec<f64>, Vec<f64>) {
        let h = self.spacing;
        (
            (0..self.n0)
                .map(|i| self.origin.x0 + i as f64 * h)
                .collect(),
            (0..self.n1)
                .map(|j| self.origin.x1 + j as f64 * h)
                .collect(),
        )
    }

    /// Bicubic Hermite interpolation of `C`; exactly zero outside the grid.
    pub fn eval(&self, z: Vector2) -> f64 {
        let h = self.spacing;
        let s = (z.x0 - self.origin.x0) / h;
        let t = (z.x1 - self.origin.x1) / h;
        if !(s >= 0.0 && t >= 0.0 && s <= (self.n0 - 1) as f64 && t <= (self.n1 - 1) as f64) {
            return 0.0;
        }
        let i = (s.floor() as usize).min(self.n0 - 2);
        let j = (t.floor() as usize).min(self.n1 - 2);
        let (u, v) = (s - i as f64, t - j as f64);
        let basis = |x: f64| {
            let x2 = x * x;
            let x3 = x2 * x;
            (
                [2.0 * x3 - 3.0 * x2 + 1.0, -2.0 * x3 + 3.0 * x2],
                [x3 - 2.0 * x2 + x, x3 - x2],
            )
        };
        let (pu, du) = basis(u);
        let (pv, dv) = basis(v);
        let mut acc = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let k = (i + a) * self.n1 + (j + b);
                acc += self.values[k] * pu[a] * pv[b]
                    + h * self.d0[k] * du[a] * pv[b]
                    + h * self.d1[k] * pu[a] * dv[b]
                    + h * h * self.d01[k] * du[a] * dv[b];
            }
        }
        acc
    }

    /// `z ↦ C(z - a)`.
    pub fn translated(&self, a: Vector2) -> Self {
        Correlation {
            origin: self.origin + a,
            plus: self.plus.translated(a.x_plus()),
            minus: self.minus.translated(a.x_minus()),
            ..self.clone()
        }
    }

    /// `z ↦ C(-z)`; turns `C_{f,g}` into `C_{g,f}`.
    pub fn reflected(&self) -> Self {
        let rev = |v: &[f64], sign: f64| -> Arc<Vec<f64>> {
            let mut out: Vec<f64> = v.iter().map(|x| sign * x).collect();
            out.reverse();
            Arc::new(out)
        };
        let far = self.support_box().hi;
        Correlation {
            origin: -far,
            values: rev(&self.values, 1.0),
            d0: rev(&self.d0, -1.0),
            d1: rev(&self.d1, -1.0),
            d01: rev(&self.d01, 1.0),
            plus: self.plus.reflected(),
            minus: self.minus.reflected(),
            ..self.clone()
        }
    }

    /// `z ↦ k C(z)`.
    pub fn scaled(&self, k: f64) -> Self {
        let sc = |v: &[f64]| Arc::new(v.iter().map(|x| k * x).collect::<Vec<f64>>());
        Correlation {
            values: sc(&self.values),
            d0: sc(&self.d0),
            d1: sc(&self.d1),
            d01: sc(&self.d01),
            plus: self.plus.scaled(k),
            minus: self.minus.scaled(k),
            integral: k * self.integral,
            interpolation_error: k.abs() * self.interpolation_error,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_2d;

    fn bump(c: Vector2) -> TestFunction {
        TestFunction::radial_bump(c, (1.0, 1.0), 1.0).unwrap()
    }

    #[test]
    fn fubini_and_marginals() {
        let f = bump(Vector2::ZERO);
        let g = TestFunction::product_bump(Vector2::new(0.3, -0.2), (0.8, 1.1), -2.0).unwrap();
        let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
        let qq = f.charge().unwrap() * g.charge().unwrap();
        assert!(
            (c.integral() - qq).abs() < 1e-10 * qq.abs(),
            "{} vs {qq}",
            c.integral()
        );
        assert!((c.plus_marginal().integral() - qq).abs() < 1e-10 * qq.abs());
        assert!((c.minus_marginal().integral() - qq).abs() < 1e-10 * qq.abs());
        assert!(
            c.interpolation_error() < 1e-5,
            "{}",
            c.interpolation_error()
        );
    }

    #[test]
    fn autocorrelation_is_even_and_positive_at_origin() {
        let f = bump(Vector2::ZERO);
        let c = Correlation::correlate(&f, &f, &GridSpec::default()).unwrap();
        assert!(c.eval(Vector2::ZERO) > 0.0);
        for z in [
            Vector2::new(0.3, 0.1),
            Vector2::new(-1.2, 0.7),
            Vector2::new(0.05, -1.9),
        ] {
            assert!((c.eval(z) - c.eval(-z)).abs() < 1e-10);
        }
    }

    #[test]
    fn support_contains_box_difference() {
        let f = bump(Vector2::new(1.0, 0.5));
        let g = bump(Vector2::new(-0.5, 2.0));
        let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
        let d = f.support_box().difference(&g.support_box());
        let sb = c.support_box();
        assert!(sb.lo.x0 <= d.lo.x0 + 1e-12 && sb.lo.x1 <= d.lo.x1 + 1e-12);
        assert!(sb.hi.x0 >= d.hi.x0 - 1e-12 && sb.hi.x1 >= d.hi.x1 - 1e-12);
        let (n0, n1) = c.grid_shape();
        let (g0, g1) = c.grid_lines();
        for a in 0..n0 {
            for b in 0..n1 {
                if !d.contains(Vector2::new(g0[a], g1[b])) {
                    assert!(c.sample_grid()[a * n1 + b].abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn translate_shifts_correlation_against_direct_quadrature() {
        let f = bump(Vector2::ZERO);
        let a = Vector2::new(3.0, -1.0);
        let fa = f.translate(a);
        let grid = GridSpec::default();
        let shifted = Correlation::correlate(&f, &fa, &grid).unwrap();
        let auto = Correlation::correlate(&f, &f, &grid)
            .unwrap()
            .translated(-a);
        let spec = QuadSpec::new(12, 20, 1e-12, 1e-11).unwrap();
        let probes = [
            (-3.2, 1.1),
            (-2.6, 0.7),
            (-3.5, 1.4),
            (-2.9, 0.2),
            (-3.0, 1.0),
        ];
        for (z0, z1) in probes {
            let z = Vector2::new(z0, z1);
            let direct = integrate_2d(
                |y| Complex64::new(f.evaluate(z + y) * fa.evaluate(y), 0.0),
                &fa.support_box(),
                &[],
                &spec,
            );
            assert!((shifted.eval(z) - auto.eval(z)).abs() < 1e-6);
            assert!((shifted.eval(z) - direct.value.re).abs() < 1e-5, "{z:?}");
        }
    }

    #[test]
    fn reflection_swaps_arguments() {
        let f = bump(Vector2::ZERO);
        let g = TestFunction::radial_bump(Vector2::new(0.4, 0.1), (0.9, 0.7), 1.5).unwrap();
        let grid = GridSpec::default();
        let fg = Correlation::correlate(&f, &g, &grid).unwrap();
        let gf = Correlation::correlate(&g, &f, &grid).unwrap();
        let r = fg.reflected();
        for z in [
            Vector2::new(0.2, 0.3),
            Vector2::new(-1.0, 0.5),
            Vector2::new(0.9, -0.8),
        ] {
            assert!((r.eval(z) - gf.eval(z)).abs() < 1e-6);
        }
        let u = 0.37;
        assert!((r.plus_marginal().eval(u) - gf.plus_marginal().eval(u)).abs() < 1e-9);
        assert!((r.minus_marginal().eval(u) - gf.minus_marginal().eval(u)).abs() < 1e-9);
    }

    #[test]
    fn coarse_grid_rejected() {
        let f = TestFunction::radial_bump(Vector2::ZERO, (0.05, 0.05), 1.0).unwrap();
        let g = bump(Vector2::ZERO);
        assert!(matches!(
            Correlation::correlate(
                &f,
                &g,
                &GridSpec {
                    max_resolution: 64,
                    ..GridSpec::default()
                }
            ),
            Err(Error::GridTooCoarse(_))
        ));
        let c = Correlation::correlate(
            &f,
            &g,
            &GridSpec {
                max_resolution: 512,
                ..GridSpec::default()
            },
        )
        .unwrap();
        assert!(c.grid_spacing().0 <= 0.05 / MIN_SAMPLES_PER_RADIUS);
    }
}
