mod common;

use std::f64::consts::PI;

use infrascat::asymptotics::*;
use infrascat::kernel::{smeared_kernel, KernelParams};
use infrascat::quadrature::QuadSpec;
use infrascat::testfn::{Correlation, GridSpec, TestFunction};
use infrascat::Vector2;
use num_complex::Complex64;

use common::{bump, dipole, fixed_poly_pairs};

fn unit_bump() -> TestFunction {
    bump((0.0, 0.0), 1.0, 1.0)
}

fn pair(h1: Poly2, h2: Poly2) -> PolyPair {
    PolyPair { h1, h2 }
}

#[test]
fn constant_logarithms() {
    let spec = QuadSpec::default();
    let f = bump((0.0, 0.0), 1.0, 0.8);
    let one = Poly2::constant(1.0).unwrap();
    let minus = Poly2::constant(-1.0).unwrap();
    let l = log_branch_lhs(&pair(one.clone(), one.clone()), &f, 1e-8, &spec).unwrap();
    assert!(l.value.norm() < 1e-7);
    let l = log_branch_lhs(&pair(minus.clone(), one.clone()), &f, 1e-8, &spec).unwrap();
    assert!((l.value - Complex64::new(0.0, PI * 0.8)).norm() < 1e-7);
    let r = log_branch_rhs(&pair(minus.clone(), minus.clone()), &f, &spec).unwrap();
    assert!((r.value - Complex64::new(0.0, -PI * 0.8)).norm() < 1e-9);
    let n = dipole((0.0, 0.0), 0.5, (0.6, 0.0), 1.0);
    let r = log_branch_rhs(&pair(Poly2::constant(3.0).unwrap(), one), &n, &spec).unwrap();
    assert!(r.value.norm() < 1e-9);
}

#[test]
fn epsilon_limit_across_a_coordinate_line() {
    let spec = QuadSpec::default();
    let f = unit_bump();
    let pp = pair(
        Poly2::affine(0.0, 1.0, 0.0).unwrap(),
        Poly2::constant(1.0).unwrap(),
    );
    let rhs = log_branch_rhs(&pp, &f, &spec).unwrap().value;
    let diffs: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&e| (log_branch_lhs(&pp, &f, e, &spec).unwrap().value - rhs).norm())
        .collect();
    assert!(diffs[0] > diffs[1] && diffs[1] > diffs[2], "{diffs:?}");
}

#[test]
fn branch_resolved_log_matches_smeared_kernel() {
    let spec = QuadSpec::default();
    let f = unit_bump();
    let a = Vector2::new(5.0, 0.0);
    let pp = pair(
        Poly2::shifted_square(-1.0, a.x0, a.x1).unwrap(),
        Poly2::affine(-a.x0, 1.0, 0.0).unwrap(),
    );
    let rhs = log_branch_rhs(&pp, &f, &spec).unwrap();
    let c = Correlation::from_density(&f, &GridSpec::default()).unwrap();
    let k = smeared_kernel(&c, -a, &KernelParams::new(1.0).unwrap(), &spec).unwrap();
    let tol = 4.0 * PI * k.error + rhs.error + 1e-9;
    assert!(
        (rhs.value + 4.0 * PI * k.value).norm() < tol,
        "{} vs {}",
        rhs.value,
        -4.0 * PI * k.value
    );
}

#[test]
fn fixed_pairs_converge_monotonically() {
    let spec = QuadSpec::default();
    let f = unit_bump();
    for (i, pp) in fixed_poly_pairs().iter().enumerate() {
        let rhs = log_branch_rhs(pp, &f, &spec).unwrap().value;
        let diffs: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| (log_branch_lhs(pp, &f, e, &spec).unwrap().value - rhs).norm())
            .collect();
        assert!(diffs.windows(2).all(|w| w[1] < w[0]), "pair {i}: {diffs:?}");
        assert!(diffs[3] <= 1e-3, "pair {i}: {diffs:?}");
    }
}

#[test]
fn curved_zero_set_uses_dense_refinement() {
    let spec = QuadSpec::default();
    let f = unit_bump();
    // Zero set is the circle of radius 1/2.
    let pp = pair(
        Poly2::new(vec![vec![-0.25, 0.0, 1.0], vec![0.0], vec![1.0]]).unwrap(),
        Poly2::constant(1.0).unwrap(),
    );
    assert!(pp.h1.zero_lines().is_none());
    let rhs = log_branch_rhs(&pp, &f, &spec).unwrap().value;
    let lhs = log_branch_lhs(&pp, &f, 1e-4, &spec).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-2);
    assert!(log_branch_lhs(&pp, &f, 0.0, &spec).is_err());
}

fn check(case: &AsymptoticCase, f: &TestFunction) -> AsymptoticTable {
    translation_asymptotics(
        case,
        f,
        &KernelParams::canonical(),
        &QuadSpec::default(),
        &GridSpec::default(),
    )
    .unwrap()
}

#[test]
fn spacelike_neutral_density_decays() {
    let f = dipole((0.0, 0.0), 0.5, (0.6, 0.2), 1.0);
    let t = check(&AsymptoticCase::with_defaults(Direction::Spacelike), &f);
    assert!(t.rows.iter().all(|r| r.rhs() == Complex64::new(0.0, 0.0)));
    assert!(t.slope <= -0.5 + 0.1, "{}", t.slope);
}

#[test]
fn timelike_phase_follows_sign_of_t() {
    let f = unit_bump();
    let case = AsymptoticCase::new(
        Direction::Timelike,
        0.5,
        vec![8.0, 32.0, 128.0, -8.0, -32.0, -128.0],
    )
    .unwrap();
    let t = check(&case, &f);
    for r in &t.rows {
        assert_eq!(r.rhs().im.signum(), r.t.signum());
        assert_eq!(r.lhs().im.signum(), r.rhs().im.signum());
        assert!((r.lhs().im - r.rhs().im).abs() <= r.residual);
    }
    assert!(t.slope <= -0.35, "{}", t.slope);
}

#[test]
fn lightlike_residual_decays_like_inverse_t() {
    let f = bump((0.4, -0.2), 1.0, 1.0);
    let t = check(&AsymptoticCase::with_defaults(Direction::LightlikePlus), &f);
    assert!((t.slope + 1.0).abs() < 0.15, "{}", t.slope);
    for r in &t.rows {
        assert!(r.lhs().im > 0.0 && r.rhs().im > 0.0);
    }
}

#[test]
fn every_case_meets_the_residual_rate() {
    let f = unit_bump();
    for d in [
        Direction::Spacelike,
        Direction::Timelike,
        Direction::LightlikePlus,
        Direction::LightlikeMinus,
    ] {
        let case = AsymptoticCase::with_defaults(d);
        assert!(case.decay_constant() <= 1.0 + 1e-12);
        let t = check(&case, &f);
        assert!(t.slope <= -case.alpha.min(1.0) + 0.15, "{d:?}: {}", t.slope);
    }
}

#[test]
fn case_validation() {
    assert!(AsymptoticCase::new(Direction::Spacelike, 1.0, vec![8.0]).is_err());
    assert!(AsymptoticCase::new(Direction::Spacelike, 0.5, vec![0.0]).is_err());
    assert_eq!(
        Direction::parse("lightlike−").unwrap(),
        Direction::LightlikeMinus
    );
    assert!(Direction::parse("sideways").is_err());
}
