//! Points and rectangles in 2d Minkowski space, coordinates `(x0, x1)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vector2 {
    pub x0: f64,
    pub x1: f64,
}

impl From<[f64; 2]> for Vector2 {
    fn from(a: [f64; 2]) -> Self {
        Vector2::new(a[0], a[1])
    }
}

impl From<Vector2> for [f64; 2] {
    fn from(v: Vector2) -> Self {
        [v.x0, v.x1]
    }
}

impl Vector2 {
    pub const ZERO: Vector2 = Vector2 { x0: 0.0, x1: 0.0 };
    /// Unit time direction.
    pub const E0: Vector2 = Vector2 { x0: 1.0, x1: 0.0 };
    /// Unit space direction.
    pub const E1: Vector2 = Vector2 { x0: 0.0, x1: 1.0 };

    pub const fn new(x0: f64, x1: f64) -> Self {
        Vector2 { x0, x1 }
    }

    /// `(t, lambda * t)`: a point on the light ray of chirality `lambda`.
    pub fn lightlike(t: f64, lambda: f64) -> Self {
        Vector2::new(t, lambda * t)
    }

    pub fn x_plus(&self) -> f64 {
        self.x0 + self.x1
    }

    pub fn x_minus(&self) -> f64 {
        self.x0 - self.x1
    }

    pub fn minkowski_square(&self) -> f64 {
        self.x_plus() * self.x_minus()
    }

    pub fn norm(&self) -> f64 {
        self.x0.hypot(self.x1)
    }

    /// Apply the boost of rapidity `chi`.
    pub fn boosted(&self, chi: f64) -> Self {
        let (s, c) = (chi.sinh(), chi.cosh());
        Vector2::new(c * self.x0 + s * self.x1, s * self.x0 + c * self.x1)
    }
}

impl Add for Vector2 {
    type Output = Vector2;
    fn add(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x0 + o.x0, self.x1 + o.x1)
    }
}

impl Sub for Vector2 {
    type Output = Vector2;
    fn sub(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x0 - o.x0, self.x1 - o.x1)
    }
}

impl Neg for Vector2 {
    type Output = Vector2;
    fn neg(self) -> Vector2 {
        Vector2::new(-self.x0, -self.x1)
    }
}

impl Mul<Vector2> for f64 {
    type Output = Vector2;
    fn mul(self, v: Vector2) -> Vector2 {
        Vector2::new(self * v.x0, self * v.x1)
    }
}

/// Closed axis-aligned rectangle `[lo.x0, hi.x0] x [lo.x1, hi.x1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub lo: Vector2,
    pub hi: Vector2,
}

impl Rect {
    pub fn new(lo: Vector2, hi: Vector2) -> Self {
        Rect { lo, hi }
    }

    pub fn centered(center: Vector2, half: (f64, f64)) -> Self {
        Rect::new(
            Vector2::new(center.x0 - half.0, center.x1 - half.1),
            Vector2::new(center.x0 + half.0, center.x1 + half.1),
        )
    }

    pub fn width0(&self) -> f64 {
        self.hi.x0 - self.lo.x0
    }

    pub fn width1(&self) -> f64 {
        self.hi.x1 - self.lo.x1
    }

    pub fn center(&self) -> Vector2 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: Vector2) -> bool {
        x.x0 >= self.lo.x0 && x.x0 <= self.hi.x0 && x.x1 >= self.lo.x1 && x.x1 <= self.hi.x1
    }

    pub fn translated(&self, a: Vector2) -> Self {
        Rect::new(self.lo + a, self.hi + a)
    }

    pub fn corners(&self) -> [Vector2; 4] {
        [
            self.lo,
            Vector2::new(self.hi.x0, self.lo.x1),
            self.hi,
            Vector2::new(self.lo.x0, self.hi.x1),
        ]
    }

    pub fn bounding(points: &[Vector2]) -> Self {
        let mut lo = Vector2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vector2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo.x0 = lo.x0.min(p.x0);
            lo.x1 = lo.x1.min(p.x1);
            hi.x0 = hi.x0.max(p.x0);
            hi.x1 = hi.x1.max(p.x1);
        }
        Rect::new(lo, hi)
    }

    /// `{x - y : x in self, y in other}`.
    pub fn difference(&self, other: &Rect) -> Self {
        Rect::new(self.lo - other.hi, self.hi - other.lo)
    }

    /// Range of `x0 + x1` over the rectangle.
    pub fn plus_range(&self) -> (f64, f64) {
        (self.lo.x_plus(), self.hi.x_plus())
    }

    /// Range of `x0 - x1` over the rectangle.
    pub fn minus_range(&self) -> (f64, f64) {
        (self.lo.x0 - self.hi.x1, self.hi.x0 - self.lo.x1)
    }
}
