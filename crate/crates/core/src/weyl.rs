//! Vacuum expectation values of products of regularized Weyl operators.
//!
//! For a word `:W(f_1): ... :W(f_n):` the expectation is zero unless the
//! total charge vanishes, and otherwise `exp(-Σ_{i<j} w_reg(f_i, f_j))`.
//! Exponents are summed first and exponentiated once.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::Vector2;
use crate::kernel::{smeared_kernel, KernelParams};
use crate::quadrature::QuadSpec;
use crate::testfn::{Correlation, GridSpec, TestFunction, TestFunctionSpec};

pub const DEFAULT_CHARGE_TOL: f64 = 1e-9;

/// `:W(sign · f(· - translation)):`.
#[derive(Debug, Clone)]
pub struct WeylFactor {
    pub f: TestFunction,
    pub translation: Vector2,
    /// `+1` or `-1`.
    pub sign: f64,
}

impl WeylFactor {
    pub fn new(f: TestFunction, translation: Vector2, sign: f64) -> Self {
        WeylFactor {
            f,
            translation,
            sign: if sign < 0.0 { -1.0 } else { 1.0 },
        }
    }

    pub fn effective_charge(&self) -> Result<f64> {
        Ok(self.sign * self.f.charge()?)
    }
}

/// An ordered product of Weyl factors.
#[derive(Debug, Clone, Default)]
pub struct WeylWord {
    pub factors: Vec<WeylFactor>,
}

impl WeylWord {
    pub fn new(factors: Vec<WeylFactor>) -> Self {
        WeylWord { factors }
    }

    pub fn total_charge(&self) -> Result<f64> {
        self.factors.iter().map(|f| f.effective_charge()).sum()
    }

    /// The word read backwards with every sign flipped; its expectation is
    /// the complex conjugate.
    pub fn adjoint(&self) -> Self {
        WeylWord {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| WeylFactor::new(f.f.clone(), f.translation, -f.sign))
                .collect(),
        }
    }
}

/// Exponent `-w_reg(f_a, f_b)` of a two-factor expectation, with its
/// quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogVev {
    pub value: Complex64,
    pub error: f64,
}

fn log_pair_from(
    c: &Correlation,
    a: &WeylFactor,
    b: &WeylFactor,
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<LogVev> {
    let s = a.sign * b.sign;
    let r = smeared_kernel(c, a.translation - b.translation, params, spec)?;
    Ok(LogVev {
        value: -s * r.value,
        error: r.error,
    })
}

/// `-(sign_a sign_b) ∫ w_reg(z + a_translation - b_translation) C_{f_a,f_b}(z) d²z`.
pub fn log_pair_vev(
    a: &WeylFactor,
    b: &WeylFactor,
    params: &KernelParams,
    spec: &QuadSpec,
    grid: &GridSpec,
) -> Result<LogVev> {
    if a.f.amplitude() == 0.0 || b.f.amplitude() == 0.0 {
        return Ok(LogVev {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    let c = Correlation::correlate(&a.f, &b.f, grid)?;
    log_pair_from(&c, a, b, params, spec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vev {
    pub value: Complex64,
    /// Sum of the pair exponents; `None` when the charge selection rule
    /// forces the value to zero.
    pub log_value: Option<Complex64>,
    pub error: f64,
}

/// Expectation value of a word. Correlations are shared between factor
/// pairs built from the same functions.
pub fn vev(
    word: &WeylWord,
    params: &KernelParams,
    spec: &QuadSpec,
    grid: &GridSpec,
    charge_tol: f64,
) -> Result<Vev> {
    if word.total_charge()?.abs() > charge_tol {
        return Ok(Vev {
            value: Complex64::new(0.0, 0.0),
            log_value: None,
            error: 0.0,
        });
    }
    let n = word.factors.len();
    let mut keys: Vec<TestFunctionSpec> = Vec::new();
    let ids: Vec<usize> = word
        .factors
        .iter()
        .map(|fac| {
            let s = fac.f.to_spec();
            match keys.iter().position(|k| *k == s) {
                Some(i) => i,
                None => {
                    keys.push(s);
                    keys.len() - 1
                }
            }
        })
        .collect();

    let mut wanted: Vec<(usize, usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            wanted.push((i, j, ids[i], ids[j]));
        }
    }
    let mut unique: Vec<(usize, usize)> = wanted
        .iter()
        .map(|&(_, _, u, v)| (u.min(v), u.max(v)))
        .collect();
    unique.sort_unstable();
    unique.dedup();
    let rep: HashMap<usize, &TestFunction> = ids
        .iter()
        .zip(&word.factors)
        .map(|(&id, f)| (id, &f.f))
        .collect();
    let built: Vec<Correlation> = unique
        .par_iter()
        .map(|&(u, v)| Correlation::correlate(rep[&u], rep[&v], grid))
        .collect::<Result<Vec<_>>>()?;
    let table: HashMap<(usize, usize), &Correlation> =
        unique.iter().copied().zip(built.iter()).collect();

    let pairs: Vec<LogVev> = wanted
        .par_iter()
        .map(|&(i, j, u, v)| {
            let (a, b) = (&word.factors[i], &word.factors[j]);
            if u <= v {
                log_pair_from(table[&(u, v)], a, b, params, spec)
            } else {
                log_pair_from(&table[&(v, u)].reflected(), a, b, params, spec)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut log = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in &pairs {
        log += p.value;
        err += p.error;
    }
    let value = log.exp();
    Ok(Vev {
        value,
        log_value: Some(log),
        error: value.norm() * err,
    })
}
