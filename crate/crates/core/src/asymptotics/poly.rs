//! Bivariate real polynomials and the shape of their zero sets.

use crate::error::{Error, Result};
use crate::quadrature::SingularLine;

/// `Σ c[i][j] x0^i x1^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    coeffs: Vec<Vec<f64>>,
}

impl Poly2 {
    pub fn new(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if coeffs.iter().flatten().all(|&c| c == 0.0) {
            return Err(Error::InvalidInput("polynomial is identically zero".into()));
        }
        Ok(Poly2 { coeffs })
    }

    pub fn constant(c: f64) -> Result<Self> {
        Poly2::new(vec![vec![c]])
    }

    /// `a + b x0 + c x1`.
    pub fn affine(a: f64, b: f64, c: f64) -> Result<Self> {
        Poly2::new(vec![vec![a, c], vec![b]])
    }

    /// `k [(x0 - a0)² - (x1 - a1)²]`.
    pub fn shifted_square(k: f64, a0: f64, a1: f64) -> Result<Self> {
        Poly2::new(vec![
            vec![k * (a0 * a0 - a1 * a1), 2.0 * k * a1, -k],
            vec![-2.0 * k * a0],
            vec![k],
        ])
    }

    pub fn eval(&self, x0: f64, x1: f64) -> f64 {
        let mut acc = 0.0;
        for row in self.coeffs.iter().rev() {
            let mut inner = 0.0;
            for &c in row.iter().rev() {
                inner = inner * x1 + c;
            }
            acc = acc * x0 + inner;
        }
        acc
    }

    fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    fn degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0.0 {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    /// Straight lines making up the zero set, when it is one of the shapes
    /// the quadrature can split along. `None` means the zero set is curved
    /// or oblique.
    pub fn zero_lines(&self) -> Option<Vec<SingularLine>> {
        let tiny = 1e-14;
        match self.degree() {
            0 => Some(vec![]),
            1 => {
                let (a, b, c) = (self.coeff(0, 0), self.coeff(1, 0), self.coeff(0, 1));
                if c == 0.0 {
                    Some(vec![SingularLine::x0(-a / b)])
                } else if b == 0.0 {
                    Some(vec![SingularLine::x1(-a / c)])
                } else if (b - c).abs() <= tiny * b.abs() {
                    Some(vec![SingularLine::x_plus(-a / b)])
                } else if (b + c).abs() <= tiny * b.abs() {
                    Some(vec![SingularLine::x_minus(-a / b)])
                } else {
                    None
                }
            }
            2 => {
                let k = self.coeff(2, 0);
                if k == 0.0
                    || (self.coeff(0, 2) + k).abs() > tiny * k.abs()
                    || self.coeff(1, 1) != 0.0
                {
                    return None;
                }
                let a0 = -self.coeff(1, 0) / (2.0 * k);
                let a1 = self.coeff(0, 1) / (2.0 * k);
                let c00 = k * (a0 * a0 - a1 * a1);
                if (self.coeff(0, 0) - c00).abs() > 1e-12 * (1.0 + c00.abs()) {
                    return None;
                }
                Some(vec![
                    SingularLine::x_plus(a0 + a1),
                    SingularLine::x_minus(a0 - a1),
                ])
            }
            _ => None,
        }
    }
}

/// The pair `(h1, h2)` in `ln(h1 + iε h2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPair {
    pub h1: Poly2,
    pub h2: Poly2,
}
