mod common;

use std::f64::consts::{E, PI};

use infrascat::kernel::{KernelParams, Regulator};
use infrascat::quadrature::QuadSpec;
use infrascat::scattering::*;
use infrascat::testfn::{GridSpec, TestFunction};
use infrascat::{Error, Vector2};
use num_complex::Complex64;

use common::{bump, dipole};

const GOLDEN_T: [f64; 6] = [0.0, 50.0, 200.0, 1000.0, 5000.0, 1e4];

fn golden_t() -> Vec<f64> {
    let mut t = GOLDEN_T.to_vec();
    t[0] = E.powi(3);
    t
}

fn params() -> KernelParams {
    KernelParams::from_regulator(&Regulator::SharpCutoff { r: 1.0 }, &QuadSpec::default()).unwrap()
}

fn config(f: TestFunction, g: TestFunction, t_grid: Vec<f64>) -> CollisionConfig {
    CollisionConfig::new(f, g, t_grid, 6, params(), QuadSpec::default(), GridSpec::default()).unwrap()
}

/// Two unit-radius bumps with `q_f q_g = qq`; a neutral `f` without dipole
/// moment when `qq = 0`.
fn charged_pair(qq: f64) -> (TestFunction, TestFunction) {
    if qq == 0.0 {
        let outer = bump((0.0, 0.0), 1.0, 1.0);
        let inner = bump((0.0, 0.0), 0.5, -1.0);
        let f = TestFunction::sum(vec![outer, inner], Vector2::ZERO, 1.0).unwrap();
        return (f, bump((0.0, 0.0), 1.0, (2.0 * PI).sqrt()));
    }
    let q = qq.abs().sqrt();
    (bump((0.0, 0.0), 1.0, q), bump((0.2, -0.1), 0.9, qq.signum() * q))
}

#[test]
fn amplitude_reaches_charge_phase() {
    for qq in [2.0 * PI, PI, -2.0 * PI] {
        let (f, g) = charged_pair(qq);
        let run = run_amplitude(&config(f, g, golden_t())).unwrap();
        let target = target_amplitude(qq);
        assert!(run.series.gap() <= 0.02, "qq {qq}: {} vs {target}", run.series.extrapolated);
        assert!(run.series.within_unit_disk(5.0));
    }
}

#[test]
fn conjugating_the_charge_conjugates_the_limit() {
    let (f, g) = charged_pair(PI);
    let a = run_amplitude(&config(f.clone(), g.clone(), golden_t())).unwrap();
    let b = run_amplitude(&config(f.scaled(-1.0), g, golden_t())).unwrap();
    assert!((a.series.extrapolated.conj() - b.series.extrapolated).norm() <= 0.03);
}

#[test]
fn neutral_function_gives_unit_amplitude() {
    let (f, g) = charged_pair(0.0);
    assert!(f.charge().unwrap().abs() < 1e-12);
    let run = run_amplitude(&config(f, g, golden_t())).unwrap();
    for s in &run.samples {
        assert!((s.s_t - 1.0).norm() < 1e-6, "T {}: {}", s.big_t, s.s_t);
    }
    let d = dipole((0.1, 0.0), 0.5, (0.6, 0.3), 1.0);
    let run = run_amplitude(&config(d, bump((0.0, 0.0), 1.0, 1.0), golden_t())).unwrap();
    for s in &run.samples {
        assert!((s.s_t - 1.0).norm() < 1e-6, "T {}: {}", s.big_t, s.s_t);
    }
}

#[test]
fn ln_t_terms_cancel() {
    let (f, g) = charged_pair(2.0 * PI);
    let run = run_amplitude(&config(f, g, golden_t())).unwrap();
    let audit = run.audit.unwrap();
    assert!(audit.ratio_slope.abs() <= 0.02);
    assert!((audit.numerator_slope - audit.denominator_slope).abs() <= 0.02);
    // Lightlike pairs carry -q²/4π per unit ln T.
    assert!((audit.pair_slopes[2] + 0.5).abs() < 0.01, "{:?}", audit.pair_slopes);
}

#[test]
fn leading_form_of_pair_exponents_improves_with_t() {
    let (f, g) = charged_pair(PI);
    let run = run_amplitude(&config(f, g, golden_t())).unwrap();
    let gaps: Vec<f64> = run.samples.iter().map(|s| s.closed_entry_gap).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    for s in &run.samples {
        assert!((s.s_t - s.closed).norm() <= 10.0 * s.err + s.big_t.powf(-0.5));
    }
}

#[test]
fn pair_tables_have_the_expected_structure() {
    let qq = 2.0 * PI;
    let (f, g) = charged_pair(qq);
    let cfg = config(f.clone(), g.clone(), vec![1e4]);
    let corr = PairCorrelations::new(&f, &g, &cfg.grid).unwrap();
    let t = 1e4;
    let spacelike = pair_table(&cfg, &corr, 0, 1, t, &[0.0]).unwrap();
    assert!(spacelike[0][0].im.abs() < 1e-8, "{}", spacelike[0][0]);
    let timelike = pair_table(&cfg, &corr, 0, 2, t, &[0.0]).unwrap();
    assert!((timelike[0][0].im + qq / 4.0).abs() < 1e-6, "{}", timelike[0][0]);
    let nodes = [-0.5, 0.0, 0.5];
    let light = pair_table(&cfg, &corr, 0, 3, t, &nodes).unwrap();
    assert!((light[0][2] - light[1][1]).norm() < 1e-10);
    assert!((light[2][0] - light[1][1]).norm() < 1e-10);
    assert!((light[0][1] - light[1][0]).norm() < 1e-10);
    assert!(pair_table(&cfg, &corr, 2, 1, t, &nodes).is_err());
}

#[test]
fn vanishing_denominator_is_reported() {
    let q = (800.0 * PI).sqrt();
    let cfg = config(bump((0.0, 0.0), 1.0, q), bump((0.0, 0.0), 1.0, q), vec![50.0]);
    assert!(matches!(s_t(&cfg, 50.0), Err(Error::Degenerate(_))));
}

#[test]
fn overlaps_decay_along_light_rays() {
    let p = params();
    let (spec, grid) = (QuadSpec::default(), GridSpec::default());
    let ts = [8.0, 16.0, 32.0, 64.0, 128.0, 256.0];
    let q = (4.0 * PI).sqrt();
    let f = bump((0.0, 0.0), 1.0, q);
    let g = bump((0.1, 0.0), 0.8, -q);
    for lambda in [1.0, -1.0] {
        let t = neutrality_decay(&f, &g, lambda, &ts, &p, &spec, &grid).unwrap();
        assert!((t.predicted_slope + 1.0).abs() < 1e-9);
        assert!((t.slope.unwrap() + 1.0).abs() <= 0.05, "{:?}", t.slope);
    }
    let g2 = bump((0.0, 0.0), 1.0, -q + 0.5);
    let t = neutrality_decay(&f, &g2, 1.0, &ts, &p, &spec, &grid).unwrap();
    assert!(t.rows.iter().all(|r| r.overlap == Complex64::new(0.0, 0.0)));
    assert!(t.slope.is_none());
    let a = dipole((0.0, 0.0), 0.5, (0.6, 0.2), 1.0);
    let b = dipole((0.0, 0.0), 0.5, (0.3, -0.5), 1.0);
    let t = neutrality_decay(&a, &b, 1.0, &ts, &p, &spec, &grid).unwrap();
    let last: Vec<f64> = t.rows[3..].iter().map(|r| r.overlap.norm()).collect();
    let spread = last.iter().copied().fold(f64::MIN, f64::max) - last.iter().copied().fold(f64::MAX, f64::min);
    assert!(last[0] > 0.0 && spread / last[2] < 0.02, "{last:?}");
}
