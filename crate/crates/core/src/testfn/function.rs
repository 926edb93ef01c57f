//! Compactly supported smooth test functions on the plane.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Rect, Vector2};
use crate::quadrature::{integrate_2d, QuadSpec};

/// The standard mollifier profile `exp(-1/(1-r2))` for `r2 < 1`, else 0.
pub fn mollifier(r2: f64) -> f64 {
    if r2 < 1.0 {
        (-1.0 / (1.0 - r2)).exp()
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    RadialBump,
    ProductBump,
    MirroredDifference,
    Sum,
}

#[derive(Debug, Clone)]
enum Shape {
    /// `mollifier((y0/r0)^2 + (y1/r1)^2)`
    Radial,
    /// `mollifier((y0/r0)^2) * mollifier((y1/r1)^2)`
    Product,
    /// `b(y - offset) - b(y + offset)` with `b` the radial bump.
    Mirrored(Vector2),
    Sum(Vec<TestFunction>),
}

/// A real test function `x ↦ amplitude * p(Λ(-χ)(x - center))`, where `p` is
/// the shape profile around the origin and `Λ(χ)` the boost of rapidity `χ`.
#[derive(Debug)]
pub struct TestFunction {
    shape: Shape,
    center: Vector2,
    radii: (f64, f64),
    amplitude: f64,
    rapidity: f64,
    charge: OnceLock<f64>,
}

impl Clone for TestFunction {
    fn clone(&self) -> Self {
        let charge = OnceLock::new();
        if let Some(&q) = self.charge.get() {
            let _ = charge.set(q);
        }
        TestFunction {
            shape: self.shape.clone(),
            center: self.center,
            radii: self.radii,
            amplitude: self.amplitude,
            rapidity: self.rapidity,
            charge,
        }
    }
}

impl TestFunction {
    fn with_shape(
        shape: Shape,
        center: Vector2,
        radii: (f64, f64),
        amplitude: f64,
    ) -> Result<Self> {
        if !(radii.0 > 0.0 && radii.1 > 0.0) || !radii.0.is_finite() || !radii.1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "radii must be positive, got {radii:?}"
            )));
        }
        if !amplitude.is_finite() {
            return Err(Error::InvalidInput("amplitude must be finite".into()));
        }
        Ok(TestFunction {
            shape,
            center,
            radii,
            amplitude,
            rapidity: 0.0,
            charge: OnceLock::new(),
        })
    }

    pub fn radial_bump(center: Vector2, radii: (f64, f64), amplitude: f64) -> Result<Self> {
        Self::with_shape(Shape::Radial, center, radii, amplitude)
    }

    pub fn product_bump(center: Vector2, radii: (f64, f64), amplitude: f64) -> Result<Self> {
        Self::with_shape(Shape::Product, center, radii, amplitude)
    }

    /// `amplitude * [b(x - center - offset) - b(x - center + offset)]`.
    pub fn mirrored_difference(
        center: Vector2,
        radii: (f64, f64),
        offset: Vector2,
        amplitude: f64,
    ) -> Result<Self> {
        Self::with_shape(Shape::Mirrored(offset), center, radii, amplitude)
    }

    /// `amplitude * Σ terms(x - center)`.
    pub fn sum(terms: Vec<TestFunction>, center: Vector2, amplitude: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("sum needs at least one term".into()));
        }
        Self::with_shape(Shape::Sum(terms), center, (1.0, 1.0), amplitude)
    }

    pub fn kind(&self) -> Kind {
        match self.shape {
            Shape::Radial => Kind::RadialBump,
            Shape::Product => Kind::ProductBump,
            Shape::Mirrored(_) => Kind::MirroredDifference,
            Shape::Sum(_) => Kind::Sum,
        }
    }

    pub fn center(&self) -> Vector2 {
        self.center
    }

    pub fn radii(&self) -> (f64, f64) {
        self.radii
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn cached_charge(&self) -> Option<f64> {
        self.charge.get().copied()
    }

    fn profile(&self, y: Vector2) -> f64 {
        let (r0, r1) = self.radii;
        match &self.shape {
            Shape::Radial => mollifier((y.x0 / r0).powi(2) + (y.x1 / r1).powi(2)),
            Shape::Product => mollifier((y.x0 / r0).powi(2)) * mollifier((y.x1 / r1).powi(2)),
            Shape::Mirrored(o) => {
                let p = y - *o;
                let m = y + *o;
                mollifier((p.x0 / r0).powi(2) + (p.x1 / r1).powi(2))
                    - mollifier((m.x0 / r0).powi(2) + (m.x1 / r1).powi(2))
            }
            Shape::Sum(terms) => terms.iter().map(|t| t.evaluate(y)).sum(),
        }
    }

    fn local_box(&self) -> Rect {
        let (r0, r1) = self.radii;
        match &self.shape {
            Shape::Radial | Shape::Product => Rect::centered(Vector2::ZERO, (r0, r1)),
            Shape::Mirrored(o) => Rect::centered(Vector2::ZERO, (r0 + o.x0.abs(), r1 + o.x1.abs())),
            Shape::Sum(terms) => {
                let corners: Vec<Vector2> = terms
                    .iter()
                    .flat_map(|t| t.support_box().corners())
                    .collect();
                Rect::bounding(&corners)
            }
        }
    }

    /// Rectangle outside of which the function is exactly zero.
    pub fn support_box(&self) -> Rect {
        let local = self.local_box();
        if self.rapidity == 0.0 {
            return local.translated(self.center);
        }
        let corners: Vec<Vector2> = local
            .corners()
            .iter()
            .map(|c| c.boosted(self.rapidity) + self.center)
            .collect();
        Rect::bounding(&corners)
    }

    /// Smallest length scale of the profile, used to judge grid resolution.
    pub fn feature_size(&self) -> f64 {
        let base = match &self.shape {
            Shape::Sum(terms) => terms
                .iter()
                .map(|t| t.feature_size())
                .fold(f64::INFINITY, f64::min),
            _ => self.radii.0.min(self.radii.1),
        };
        base * (-self.rapidity.abs()).exp()
    }

    pub fn evaluate(&self, x: Vector2) -> f64 {
        if self.amplitude == 0.0 || !self.support_box().contains(x) {
            return 0.0;
        }
        let y = if self.rapidity == 0.0 {
            x - self.center
        } else {
            (x - self.center).boosted(-self.rapidity)
        };
        self.amplitude * self.profile(y)
    }

    /// `∫ f d²x`, computed once and cached. Mirrored differences are exactly
    /// neutral and sums add the charges of their terms.
    pub fn charge(&self) -> Result<f64> {
        if let Some(&q) = self.charge.get() {
            return Ok(q);
        }
        let q = match &self.shape {
            Shape::Mirrored(_) => 0.0,
            Shape::Sum(terms) => {
                let mut q = 0.0;
                for t in terms {
                    q += t.charge()?;
                }
                self.amplitude * q
            }
            _ => self.compute_charge()?,
        };
        Ok(*self.charge.get_or_init(|| q))
    }

    /// Recompute `∫ f d²x` by quadrature, ignoring the cache.
    pub fn compute_charge(&self) -> Result<f64> {
        if self.amplitude == 0.0 {
            return Ok(0.0);
        }
        let spec = QuadSpec::new(12, 24, 1e-14, 1e-13)?;
        let r = integrate_2d(
            |x| Complex64::new(self.evaluate(x), 0.0),
            &self.support_box(),
            &[],
            &spec,
        );
        if !r.converged && r.error > 1e-10 * (1.0 + r.value.norm()) {
            return Err(Error::NotConverged {
                value: r.value,
                error: r.error,
            });
        }
        Ok(r.value.re)
    }

    fn uncached(&self) -> Self {
        let mut f = self.clone();
        f.charge = OnceLock::new();
        f
    }

    /// `x ↦ f(x - a)`.
    pub fn translate(&self, a: Vector2) -> Self {
        let mut f = self.uncached();
        f.center = f.center + a;
        f
    }

    /// `x ↦ f(Λ(-chi) x)`.
    pub fn boost(&self, chi: f64) -> Self {
        let mut f = self.uncached();
        f.center = f.center.boosted(chi);
        f.rapidity += chi;
        f
    }

    /// `x ↦ k f(x)`; the cached charge scales along.
    pub fn scaled(&self, k: f64) -> Self {
        let mut f = self.uncached();
        f.amplitude *= k;
        if let Some(q) = self.cached_charge() {
            let _ = f.charge.set(k * q);
        }
        f
    }

    /// Rescale the amplitude so that the charge equals `q_target`.
    pub fn normalize_to_charge(&self, q_target: f64) -> Result<Self> {
        if q_target == 0.0 {
            return Err(Error::InvalidInput(
                "cannot normalize to zero charge; use amplitude 0 instead".into(),
            ));
        }
        let q = self.charge()?;
        let scale = self.amplitude.abs().max(f64::MIN_POSITIVE)
            * self.support_box().width0()
            * self.support_box().width1();
        if q.abs() <= 1e-12 * scale {
            return Err(Error::ZeroCharge);
        }
        let mut f = self.uncached();
        f.amplitude *= q_target / q;
        let _ = f.charge.set(q_target);
        Ok(f)
    }

    /// Samples on the lattice `origin + h (i, j)`, `i < n0`, `j < n1`, row-major in `i`.
    pub fn sample_lattice(&self, origin: Vector2, h: f64, n0: usize, n1: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n0 * n1);
        for i in 0..n0 {
            for j in 0..n1 {
                out.push(self.evaluate(origin + Vector2::new(i as f64 * h, j as f64 * h)));
            }
        }
        out
    }

    pub fn to_spec(&self) -> TestFunctionSpec {
        let (kind, offset, terms) = match &self.shape {
            Shape::Radial => (Kind::RadialBump, None, None),
            Shape::Product => (Kind::ProductBump, None, None),
            Shape::Mirrored(o) => (Kind::MirroredDifference, Some(*o), None),
            Shape::Sum(t) => (
                Kind::Sum,
                None,
                Some(t.iter().map(|t| t.to_spec()).collect()),
            ),
        };
        TestFunctionSpec {
            kind,
            center: self.center,
            radii: if terms.is_some() {
                None
            } else {
                Some(self.radii)
            },
            amplitude: self.amplitude,
            offset,
            rapidity: (self.rapidity != 0.0).then_some(self.rapidity),
            terms,
            charge: None,
        }
    }
}

/// Serialized form of a [`TestFunction`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFunctionSpec {
    pub kind: Kind,
    #[serde(default)]
    pub center: Vector2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<(f64, f64)>,
    #[serde(default = "one")]
    pub amplitude: f64,
    /// Half-separation of the two bumps of a mirrored difference.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vector2>,
    /// Boost rapidity applied after construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rapidity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TestFunctionSpec>>,
    /// Rescale the built function to this charge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl TestFunctionSpec {
    pub fn build(&self) -> Result<TestFunction> {
        let radii = || {
            self.radii
                .ok_or_else(|| Error::Config(format!("{:?} needs radii", self.kind)))
        };
        let f = match self.kind {
            Kind::RadialBump => TestFunction::radial_bump(self.center, radii()?, self.amplitude)?,
            Kind::ProductBump => TestFunction::product_bump(self.center, radii()?, self.amplitude)?,
            Kind::MirroredDifference => {
                let offset = self
                    .offset
                    .ok_or_else(|| Error::Config("mirrored_difference needs offset".into()))?;
                TestFunction::mirrored_difference(self.center, radii()?, offset, self.amplitude)?
            }
            Kind::Sum => {
                let terms = self
                    .terms
                    .as_ref()
                    .ok_or_else(|| Error::Config("sum needs terms".into()))?
                    .iter()
                    .map(|t| t.build())
                    .collect::<Result<Vec<_>>>()?;
                TestFunction::sum(terms, self.center, self.amplitude)?
            }
        };
        let f = match self.rapidity {
            Some(chi) if chi != 0.0 => {
                // The boost acts about the origin of the local frame.
                f.translate(-self.center).boost(chi).translate(self.center)
            }
            _ => f,
        };
        match self.charge {
            Some(0.0) => Err(Error::Config(
                "charge 0 cannot be reached by rescaling; use a neutral kind".into(),
            )),
            Some(q) => f.normalize_to_charge(q),
            None => Ok(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> TestFunction {
        TestFunction::radial_bump(Vector2::ZERO, (1.0, 1.0), 1.0).unwrap()
    }

    #[test]
    fn central_value_and_outside() {
        let f = unit();
        assert!((f.evaluate(Vector2::ZERO) - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(f.evaluate(Vector2::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn mirrored_difference_vanishes_at_midpoint() {
        let f = TestFunction::mirrored_difference(
            Vector2::ZERO,
            (1.0, 1.0),
            Vector2::new(0.0, 0.5),
            1.0,
        )
        .unwrap();
        assert_eq!(f.evaluate(Vector2::ZERO), 0.0);
        assert!(f.charge().unwrap().abs() < 1e-12);
    }

    #[test]
    fn zero_amplitude_has_zero_charge() {
        let f = TestFunction::radial_bump(Vector2::ZERO, (1.0, 1.0), 0.0).unwrap();
        assert_eq!(f.charge().unwrap(), 0.0);
    }

    #[test]
    fn unit_bump_charge_matches_radial_oracle() {
        // ∫ 2πr exp(-1/(1-r²)) dr over [0,1] = π (e^{-1} - E1(1)).
        let e1_one = 0.219_383_934_395_520_27;
        let closed = std::f64::consts::PI * ((-1f64).exp() - e1_one);
        let spec = QuadSpec::new(20, 30, 1e-15, 1e-15).unwrap();
        let radial = crate::quadrature::integrate_1d(
            |r| Complex64::new(2.0 * std::f64::consts::PI * r * mollifier(r * r), 0.0),
            0.0,
            1.0,
            &[],
            &[],
            &spec,
        );
        assert!((radial.value.re - closed).abs() < 1e-14);
        let q = unit().charge().unwrap();
        assert!(
            (q - radial.value.re).abs() < 1e-10,
            "{q} vs {}",
            radial.value.re
        );
    }

    #[test]
    fn translate_and_boost() {
        let f = unit();
        let t = f.translate(Vector2::new(3.0, 1.0));
        assert_eq!(
            t.evaluate(Vector2::new(3.0, 1.0)),
            f.evaluate(Vector2::ZERO)
        );
        assert_eq!(
            f.translate(Vector2::ZERO).evaluate(Vector2::new(0.3, 0.2)),
            f.evaluate(Vector2::new(0.3, 0.2))
        );
        let b = f.boost(0.7);
        assert!((b.evaluate(Vector2::ZERO) - f.evaluate(Vector2::ZERO)).abs() < 1e-15);
        let x = Vector2::new(0.4, -0.3);
        assert!((b.evaluate(x.boosted(0.7)) - f.evaluate(x)).abs() < 1e-14);
        let q = f.charge().unwrap();
        assert!((b.charge().unwrap() - q).abs() < 1e-10);
        assert!((t.charge().unwrap() - q).abs() < 1e-12);
    }

    #[test]
    fn normalization() {
        let f = unit();
        let q = f.charge().unwrap();
        let target = 2.0 * std::f64::consts::PI.sqrt();
        let n = f.normalize_to_charge(target).unwrap();
        assert!((n.amplitude() - target / q).abs() < 1e-14);
        let m = f.normalize_to_charge(-1.0).unwrap();
        assert!(m.amplitude() < 0.0);
        assert!((m.compute_charge().unwrap() + 1.0).abs() < 1e-10);
        assert!(f.normalize_to_charge(0.0).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let json = r#"{"kind":"mirrored_difference","center":[1.0,2.0],"radii":[0.5,0.5],"amplitude":2.0,"offset":[0.0,0.25]}"#;
        let spec: TestFunctionSpec = serde_json::from_str(json).unwrap();
        let f = spec.build().unwrap();
        assert_eq!(f.to_spec(), spec);
        let bad = r#"{"kind":"radial_bump","radii":[1,1],"colour":3}"#;
        assert!(serde_json::from_str::<TestFunctionSpec>(bad).is_err());
    }
}
