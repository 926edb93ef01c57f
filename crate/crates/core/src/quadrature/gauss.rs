//! Gauss–Legendre rules and their Kronrod extensions on [-1, 1].
//!
//! Legendre nodes are found by Newton iteration on the three-term recurrence.
//! Kronrod extensions of arbitrary order follow Laurie's construction of the
//! Jacobi–Kronrod matrix, whose eigen-decomposition yields the 2n+1 nodes and
//! weights.

use nalgebra::{DMatrix, SymmetricEigen};

/// An n-point Gauss–Legendre rule on [-1, 1], nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton.
            let theta = std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5);
            let mut x = theta.cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A Gauss–Kronrod pair: `2n+1` Kronrod nodes, of which the odd-indexed
/// ones (in ascending order) are the `n` Gauss nodes.
#[derive(Debug, Clone)]
pub struct GaussKronrod {
    pub gauss_order: usize,
    pub nodes: Vec<f64>,
    pub kronrod_weights: Vec<f64>,
    /// Gauss weights aligned with `nodes`; zero at Kronrod-only nodes.
    pub gauss_weights: Vec<f64>,
}

impl GaussKronrod {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Kronrod pair needs n >= 1");
        let gl = GaussLegendre::new(n);
        let (mut nodes, kronrod_weights) = kronrod_nodes_weights(n);
        let mut gauss_weights = vec![0.0; 2 * n + 1];
        for i in 0..n {
            nodes[2 * i + 1] = gl.nodes[i];
            gauss_weights[2 * i + 1] = gl.weights[i];
        }
        // Enforce exact mirror symmetry.
        let len = nodes.len();
        for i in 0..len / 2 {
            let x = 0.5 * (nodes[len - 1 - i] - nodes[i]);
            nodes[i] = -x;
            nodes[len - 1 - i] = x;
        }
        nodes[len / 2] = 0.0;
        let mut kw = kronrod_weights;
        for i in 0..len / 2 {
            let w = 0.5 * (kw[i] + kw[len - 1 - i]);
            kw[i] = w;
            kw[len - 1 - i] = w;
        }
        GaussKronrod {
            gauss_order: n,
            nodes,
            kronrod_weights: kw,
            gauss_weights,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Monic Legendre recurrence coefficients `(a_k, b_k)`, `b_0 = 2`.
fn legendre_recurrence(len: usize) -> Vec<(f64, f64)> {
    (0..len)
        .map(|k| {
            if k == 0 {
                (0.0, 2.0)
            } else {
                let kf = k as f64;
                (0.0, kf * kf / (4.0 * kf * kf - 1.0))
            }
        })
        .collect()
}

/// Jacobi–Kronrod recurrence coefficients (Laurie, 1997). Vectors are
/// indexed exactly as in the one-based reference with a shift of one.
fn kronrod_recurrence(n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab0 = legendre_recurrence((3 * n).div_ceil(2) + 2);
    let mut a = vec![0.0; 2 * n + 1];
    let mut b = vec![0.0; 2 * n + 1];
    for k in 0..=(3 * n / 2) {
        a[k] = ab0[k].0;
    }
    for k in 0..=(3 * n).div_ceil(2) {
        b[k] = ab0[k].1;
    }
    let slen = n / 2 + 2;
    let mut s = vec![0.0; slen];
    let mut t = vec![0.0; slen];
    t[1] = b[n + 1];

    for m in 0..n.saturating_sub(1) {
        // k runs from floor((m+1)/2) down to 0; l = m - k.
        let kmax = m.div_ceil(2);
        let ks: Vec<usize> = (0..=kmax).rev().collect();
        let terms: Vec<f64> = ks
            .iter()
            .map(|&k| {
                let l = m - k;
                (a[k + n + 1] - a[l]) * t[k + 1] + b[k + n + 1] * s[k] - b[l] * s[k + 1]
            })
            .collect();
        let mut acc = 0.0;
        for (idx, &k) in ks.iter().enumerate() {
            acc += terms[idx];
            s[k + 1] = acc;
        }
        std::mem::swap(&mut s, &mut t);
    }

    for j in (0..=n / 2).rev() {
        s[j + 1] = s[j];
    }

    for m in (n - 1)..=(2 * n).saturating_sub(3) {
        if 2 * n < 3 {
            break;
        }
        let kstart = m + 1 - n;
        let kend = (m - 1) / 2;
        let mut last_j = None;
        if kstart <= kend {
            let ks: Vec<usize> = (kstart..=kend).collect();
            let terms: Vec<(usize, f64)> = ks
                .iter()
                .map(|&k| {
                    let l = m - k;
                    let j = n - 1 - l;
                    let v = -(a[k + n + 1] - a[l]) * t[j + 1] - b[k + n + 1] * s[j + 1]
                        + b[l] * s[j + 2];
                    (j, v)
                })
                .collect();
            let mut acc = 0.0;
            for &(j, v) in &terms {
                acc += v;
                s[j + 1] = acc;
            }
            last_j = terms.last().map(|&(j, _)| j);
        }
        let k = m.div_ceil(2);
        let j = match last_j {
            Some(j) => j,
            None => n - 1 - (m - kend.max(kstart)),
        };
        if m % 2 == 0 {
            a[k + n + 1] = a[k] + (s[j + 1] - b[k + n + 1] * s[j + 2]) / t[j + 2];
        } else {
            b[k + n + 1] = s[j + 1] / s[j + 2];
        }
        std::mem::swap(&mut s, &mut t);
    }
    a[2 * n] = a[n - 1] - b[2 * n] * s[1] / t[1];
    (a, b)
}

fn kronrod_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = kronrod_recurrence(n);
    let dim = 2 * n + 1;
    let mut jac = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim {
        jac[(k, k)] = a[k];
        if k + 1 < dim {
            let off = b[k + 1].sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..dim)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], b[0] * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}
