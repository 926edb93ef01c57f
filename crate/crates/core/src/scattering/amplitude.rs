use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::extrapolate::{extrapolate, AmplitudeSample, AmplitudeSeries};
use super::{build_factors, CollisionConfig, FactorTemplate, Which};
use crate::asymptotics::fit_slope;
use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::kernel::{smeared_chiral, smeared_kernel, w_chiral_point, Chirality, KernelParams};
use crate::quadrature::QuadSpec;
use crate::testfn::{Correlation, GridSpec, TestFunction};

/// Factor pairs `(i, j)` with `i < j`, in summation order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Smallest denominator modulus accepted before the ratio is declared
/// degenerate.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Correlations of every ordered function pair, built once per run.
#[derive(Debug, Clone)]
pub struct PairCorrelations {
    ff: Correlation,
    gg: Correlation,
    gf: Correlation,
    fg: Correlation,
}

impl PairCorrelations {
    pub fn new(f: &TestFunction, g: &TestFunction, grid: &GridSpec) -> Result<Self> {
        let gf = Correlation::correlate(g, f, grid)?;
        Ok(PairCorrelations {
            ff: Correlation::correlate(f, f, grid)?,
            gg: Correlation::correlate(g, g, grid)?,
            fg: gf.reflected(),
            gf,
        })
    }

    pub fn get(&self, a: Which, b: Which) -> &Correlation {
        match (a, b) {
            (Which::F, Which::F) => &self.ff,
            (Which::G, Which::G) => &self.gg,
            (Which::G, Which::F) => &self.gf,
            (Which::F, Which::G) => &self.fg,
        }
    }
}

/// One pair table: exponents `-(s_i s_j) w(C_ij, tr_i(a) - tr_j(b))` over
/// time nodes `(a, b)`, row-major, with the leading large-`T` form of each
/// entry alongside.
struct PairTable {
    values: Vec<Complex64>,
    errors: Vec<f64>,
    closed: Vec<Complex64>,
}

struct PairContext<'a> {
    c: &'a Correlation,
    charge: f64,
    /// `∫ w^± C` at zero shift, used where the shift has no `±` component.
    at_rest: [Complex64; 2],
}

fn closed_entry(ctx: &PairContext, shift: Vector2, params: &KernelParams) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in [Chirality::Plus, Chirality::Minus].into_iter().enumerate() {
        let u = c.coordinate(shift);
        acc += if u == 0.0 {
            ctx.at_rest[k]
        } else {
            ctx.charge * w_chiral_point(u, params)?
        };
    }
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn build_pair_table(
    a: &FactorTemplate,
    b: &FactorTemplate,
    ctx: &PairContext,
    big_t: f64,
    nodes: &[f64],
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<PairTable> {
    let n = nodes.len();
    let sign = -a.sign * b.sign;
    let cells: Vec<(Complex64, f64, Complex64)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let shift = a.translation(big_t, nodes[k / n]) - b.translation(big_t, nodes[k % n]);
            let r = smeared_kernel(ctx.c, shift, params, spec)?;
            Ok((
                sign * r.value,
                r.error,
                sign * closed_entry(ctx, shift, params)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairTable {
        values: cells.iter().map(|c| c.0).collect(),
        errors: cells.iter().map(|c| c.1).collect(),
        closed: cells.iter().map(|c| c.2).collect(),
    })
}

/// Exponents `-(s_i s_j) w(C_ij, tr_i(t_a) - tr_j(t_b))` of factors `i < j`
/// of [`build_factors`] at time nodes `t_a`, `t_b`.
pub fn pair_table(
    cfg: &CollisionConfig,
    corr: &PairCorrelations,
    i: usize,
    j: usize,
    big_t: f64,
    nodes: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    if i >= j || j > 3 {
        return Err(Error::InvalidInput(format!(
            "need factor indices i < j <= 3, got ({i}, {j})"
        )));
    }
    let factors = build_factors(&cfg.f, &cfg.g);
    let (a, b) = (&factors[i], &factors[j]);
    let c = corr.get(a.which, b.which);
    let n = nodes.len();
    let sign = -a.sign * b.sign;
    let flat = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let shift = a.translation(big_t, nodes[k / n]) - b.translation(big_t, nodes[k % n]);
            Ok(sign * smeared_kernel(c, shift, &cfg.params, &cfg.spec)?.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(flat.chunks(n).map(|r| r.to_vec()).collect())
}

/// `ln Σ w_k e^{E_k}`, shifted by the largest real part.
fn log_sum_exp(terms: impl Iterator<Item = (f64, Complex64)> + Clone) -> Complex64 {
    let m = terms
        .clone()
        .map(|(_, e)| e.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let s: Complex64 = terms.map(|(w, e)| w * (e - m).exp()).sum();
    s.ln() + m
}

/// `(ln numerator, ln denominator)` from six tables over weights `w`.
fn assemble(t: [&[Complex64]; 6], w: &[f64]) -> (Complex64, Complex64) {
    let n = w.len();
    let idx = |a: usize, b: usize| a * n + b;
    let grid = (0..n.pow(4)).map(|k| {
        let (a, b, c, d) = (k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n);
        let e = t[0][idx(a, b)]
            + t[1][idx(a, c)]
            + t[2][idx(a, d)]
            + t[3][idx(b, c)]
            + t[4][idx(b, d)]
            + t[5][idx(c, d)];
        (w[a] * w[b] * w[c] * w[d], e)
    });
    let numerator = log_sum_exp(grid);
    let pairs =
        |tab: &[Complex64]| log_sum_exp((0..n * n).map(move |k| (w[k / n] * w[k % n], tab[k])));
    (numerator, pairs(t[2]) + pairs(t[3]))
}

/// Everything computed at one `T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TSample {
    pub big_t: f64,
    pub s_t: Complex64,
    /// Quadrature and time-average errors combined.
    pub err: f64,
    pub quad_error: f64,
    /// Change of `S_T` when the time average drops two Gauss points.
    pub h_error: f64,
    /// `S_T` with every exponent replaced by its leading large-`T` form.
    pub closed: Complex64,
    /// Largest difference between a pair exponent and its leading form.
    pub closed_entry_gap: f64,
    /// Weighted mean of each pair table, in [`PAIRS`] order.
    pub pair_means: [Complex64; 6],
    pub log_numerator: Complex64,
    pub log_denominator: Complex64,
}

struct Prepared {
    factors: [FactorTemplate; 4],
    corr: PairCorrelations,
    charges: [f64; 4],
    at_rest: Vec<[Complex64; 2]>,
}

fn prepare(cfg: &CollisionConfig) -> Result<Prepared> {
    let factors = build_factors(&cfg.f, &cfg.g);
    let corr = PairCorrelations::new(&cfg.f, &cfg.g, &cfg.grid)?;
    let charges = [
        cfg.g.charge()?,
        cfg.f.charge()?,
        cfg.f.charge()?,
        cfg.g.charge()?,
    ];
    let at_rest = PAIRS
        .par_iter()
        .map(|&(i, j)| {
            let c = corr.get(factors[i].which, factors[j].which);
            Ok([
                smeared_chiral(c, Chirality::Plus, Vector2::ZERO, &cfg.params, &cfg.spec)?.value,
                smeared_chiral(c, Chirality::Minus, Vector2::ZERO, &cfg.params, &cfg.spec)?.value,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared {
        factors,
        corr,
        charges,
        at_rest,
    })
}

struct Evaluated {
    log_num: Complex64,
    log_den: Complex64,
    closed: Complex64,
    quad_error: f64,
    closed_entry_gap: f64,
    pair_means: [Complex64; 6],
}

fn evaluate(cfg: &CollisionConfig, prep: &Prepared, big_t: f64, order: usize) -> Result<Evaluated> {
    let (nodes, w) = cfg.h.nodes(order);
    let tables = PAIRS
        .par_iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let (a, b) = (&prep.factors[i], &prep.factors[j]);
            let ctx = PairContext {
                c: prep.corr.get(a.which, b.which),
                charge: prep.charges[i] * prep.charges[j],
                at_rest: prep.at_rest[p],
            };
            build_pair_table(a, b, &ctx, big_t, &nodes, &cfg.params, &cfg.spec)
        })
        .collect::<Result<Vec<_>>>()?;
    let values: [&[Complex64]; 6] = std::array::from_fn(|p| tables[p].values.as_slice());
    let closed: [&[Complex64]; 6] = std::array::from_fn(|p| tables[p].closed.as_slice());
    let (log_num, log_den) = assemble(values, &w);
    let (cn, cd) = assemble(closed, &w);
    let max_err = |p: usize| tables[p].errors.iter().copied().fold(0.0, f64::max);
    let quad_error = (0..6).map(max_err).sum::<f64>() + max_err(2) + max_err(3);
    let n = w.len();
    let pair_means = std::array::from_fn(|p| {
        (0..n * n)
            .map(|k| w[k / n] * w[k % n] * tables[p].values[k])
            .sum::<Complex64>()
    });
    let closed_entry_gap = tables
        .iter()
        .flat_map(|t| t.values.iter().zip(&t.closed).map(|(a, b)| (a - b).norm()))
        .fold(0.0, f64::max);
    Ok(Evaluated {
        log_num,
        log_den,
        closed: (cn - cd).exp(),
        quad_error,
        closed_entry_gap,
        pair_means,
    })
}

fn sample(cfg: &CollisionConfig, prep: &Prepared, big_t: f64) -> Result<TSample> {
    let main = evaluate(cfg, prep, big_t, cfg.h_quad_order)?;
    if main.log_den.re < DENOMINATOR_FLOOR.ln() {
        return Err(Error::Degenerate(main.log_den.re));
    }
    let coarse = evaluate(cfg, prep, big_t, cfg.h_quad_order - 2)?;
    let s_t = (main.log_num - main.log_den).exp();
    let s_coarse = (coarse.log_num - coarse.log_den).exp();
    let quad_error = s_t.norm() * main.quad_error;
    let h_error = (s_t - s_coarse).norm();
    Ok(TSample {
        big_t,
        s_t,
        err: quad_error + h_error,
        quad_error,
        h_error,
        closed: main.closed,
        closed_entry_gap: main.closed_entry_gap,
        pair_means: main.pair_means,
        log_numerator: main.log_num,
        log_denominator: main.log_den,
    })
}

/// `S_T` and its error estimate at one `T`.
pub fn s_t(cfg: &CollisionConfig, big_t: f64) -> Result<(Complex64, f64)> {
    let prep = prepare(cfg)?;
    let s = sample(cfg, &prep, big_t)?;
    Ok((s.s_t, s.err))
}

/// Slopes against `ln T` of the pair exponents and of `ln |S_T|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CancellationAudit {
    /// Slope of the real part of each pair's mean exponent, in [`PAIRS`] order.
    pub pair_slopes: [f64; 6],
    pub numerator_slope: f64,
    pub denominator_slope: f64,
    pub ratio_slope: f64,
}

pub fn cancellation_audit(samples: &[TSample]) -> Result<CancellationAudit> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput(
            "audit needs at least two T values".into(),
        ));
    }
    let x: Vec<f64> = samples.iter().map(|s| s.big_t.ln()).collect();
    let pair_slopes: [f64; 6] = std::array::from_fn(|p| {
        let y: Vec<f64> = samples.iter().map(|s| s.pair_means[p].re).collect();
        fit_slope(&x, &y)
    });
    let ratio: Vec<f64> = samples.iter().map(|s| s.s_t.norm().ln()).collect();
    Ok(CancellationAudit {
        pair_slopes,
        numerator_slope: pair_slopes.iter().sum(),
        denominator_slope: pair_slopes[2] + pair_slopes[3],
        ratio_slope: fit_slope(&x, &ratio),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeRun {
    pub samples: Vec<TSample>,
    pub series: AmplitudeSeries,
    pub audit: Option<CancellationAudit>,
}

/// Evaluate every `T` of the config and extrapolate.
pub fn run_amplitude(cfg: &CollisionConfig) -> Result<AmplitudeRun> {
    cfg.validate()?;
    let prep = prepare(cfg)?;
    let samples = cfg
        .t_grid
        .par_iter()
        .map(|&t| sample(cfg, &prep, t))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<AmplitudeSample> = samples
        .iter()
        .map(|s| AmplitudeSample {
            big_t: s.big_t,
            s_t: s.s_t,
            err: s.err,
        })
        .collect();
    let series = extrapolate(&points, cfg.target()?)?;
    let audit = if samples.len() >= 2 {
        Some(cancellation_audit(&samples)?)
    } else {
        None
    };
    Ok(AmplitudeRun {
        samples,
        series,
        audit,
    })
}
