mod common;

use std::f64::consts::PI;

use infrascat::kernel::*;
use infrascat::quadrature::{default_cutoffs, integrate_1d_oscillatory, QuadSpec};
use infrascat::testfn::{Correlation, GridSpec, TestFunction};
use infrascat::Vector2;
use num_complex::Complex64;

/// `Cin(x) = ∫_0^x (1 - cos t)/t dt` by its power series.
fn cin_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0; // x^{2k} / (2k)!
    for k in 1..60 {
        let kf = k as f64;
        term *= -x * x / ((2.0 * kf - 1.0) * (2.0 * kf));
        sum -= term / (2.0 * kf);
    }
    sum
}

/// `Ci(x) = γ + ln x - Cin(x)`; `∫_x^∞ cos t / t dt = -Ci(x)`.
fn ci_series(x: f64) -> f64 {
    EULER_GAMMA + x.ln() - cin_series(x)
}

#[test]
fn cosine_integral_oracle_is_consistent() {
    // Ci(1) from tables.
    assert!((ci_series(1.0) - 0.337_403_922_900_968_1).abs() < 1e-15);
}

#[test]
fn spectral_integral_at_one_for_sharp_cutoff() {
    let v = Regulator::SharpCutoff { r: 1.0 };
    let spec = QuadSpec::default();
    let i1 = spectral_i(1.0, &v, &spec).unwrap();
    assert!(i1.converged);
    assert!((i1.value.im - PI / 2.0).abs() < 1e-6);
    // Re I(1) = Cin(1) - ∫_1^∞ cos t/t dt = Cin(1) + Ci(1).
    let oracle = cin_series(1.0) + ci_series(1.0);
    assert!((oracle - EULER_GAMMA).abs() < 1e-14);
    assert!(
        (i1.value.re - oracle).abs() < 1e-8,
        "{} vs {oracle}",
        i1.value.re
    );
    let im1 = spectral_i(-1.0, &v, &spec).unwrap();
    assert!((im1.value - i1.value.conj()).norm() < 1e-8);
}

#[test]
fn mu_fit_for_sharp_and_exponential_regulators() {
    let spec = QuadSpec::default();
    let sharp1 = fit_mu(&Regulator::SharpCutoff { r: 1.0 }, &DEFAULT_U_GRID, &spec).unwrap();
    assert!((sharp1.mu_v - EULER_GAMMA.exp()).abs() < 1e-6);
    assert!(sharp1.residual < 1e-5 && !sharp1.flagged);
    let sharp2 = fit_mu(&Regulator::SharpCutoff { r: 2.0 }, &DEFAULT_U_GRID, &spec).unwrap();
    assert!((sharp2.mu_v / sharp1.mu_v - 2.0).abs() < 1e-6);
    let a = fit_mu(&Regulator::SharpCutoff { r: 1.0 }, &[0.5, 1.0, 2.0], &spec).unwrap();
    let b = fit_mu(&Regulator::SharpCutoff { r: 1.0 }, &[3.0, 4.0, 5.0], &spec).unwrap();
    assert!((a.mu_v - b.mu_v).abs() < 1e-5);
    // exp(-k/a) gives I(u) = ln(a u) + iπ/2 exactly.
    let e = fit_mu(
        &Regulator::SmoothExponential { scale: 3.0 },
        &DEFAULT_U_GRID,
        &spec,
    )
    .unwrap();
    assert!((e.mu_v - 3.0).abs() < 1e-6, "{e:?}");
    assert!(fit_mu(&Regulator::SharpCutoff { r: 1.0 }, &[1.0, 2.0], &spec).is_err());
}

#[test]
fn chiral_decomposition_and_mu_independent_commutator() {
    let p1 = KernelParams::new(1.3).unwrap();
    let p2 = KernelParams::new(0.2).unwrap();
    let mut state = 0x2545_f491_4f6c_dd1d_u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 20.0 - 10.0
    };
    for _ in 0..100 {
        let z = Vector2::new(next(), next());
        let w = w_reg_point(z, &p1).unwrap();
        let split =
            w_chiral_point(z.x_minus(), &p1).unwrap() + w_chiral_point(z.x_plus(), &p1).unwrap();
        assert!((w - split).norm() <= 1e-14 * (1.0 + w.norm()));
        let a1 = w - w_reg_point(-z, &p1).unwrap();
        let a2 = w_reg_point(z, &p2).unwrap() - w_reg_point(-z, &p2).unwrap();
        assert!((a1 - a2).norm() < 1e-15);
        assert!((a1 - commutator_point(z).unwrap()).norm() < 1e-15);
    }
}

/// `(1/2π) ∫ dp/(2ω) (e^{-ip·z} - e^{ip·z})` at `z = (1, 0)` for mass `m`,
/// written as `-(i/2π) ∫_m^∞ sin ω / sqrt(ω² - m²) dω`.
fn massive_commutator_at_unit_time(m: f64) -> Complex64 {
    let spec = QuadSpec::new(12, 30, 1e-12, 1e-11).unwrap();
    let r = integrate_1d_oscillatory(
        |w| Complex64::new(w.sin() / ((w - m) * (w + m)).sqrt(), 0.0),
        m,
        1.0,
        &default_cutoffs(1.0, 20.0),
        &[],
        &[m],
        &spec,
    );
    Complex64::new(0.0, -r.value.re / PI)
}

#[test]
fn commutator_matches_massless_limit_of_massive_oracle() {
    let d2 = massive_commutator_at_unit_time(1e-2);
    let d3 = massive_commutator_at_unit_time(1e-3);
    // The massive value is -(i/2) J0(m); extrapolate linearly in m².
    let (m2, m3) = (1e-4, 1e-6);
    let limit = d3 + (d3 - d2) * (m3 / (m2 - m3));
    let exact = commutator_point(Vector2::new(1.0, 0.0)).unwrap();
    assert!((limit - exact).norm() < 1e-6, "{limit} vs {exact}");
}

fn bump(c: (f64, f64), r: f64, q: f64) -> TestFunction {
    TestFunction::radial_bump(Vector2::new(c.0, c.1), (r, r), 1.0)
        .unwrap()
        .normalize_to_charge(q)
        .unwrap()
}

#[test]
fn spectral_oracle_matches_closed_form_for_charged_bumps() {
    let spec = QuadSpec::default();
    let v = Regulator::SharpCutoff { r: 1.0 };
    let params = KernelParams::from_regulator(&v, &spec).unwrap();
    let f = bump((0.0, 0.0), 1.0, 1.0);
    let g = bump((0.3, -0.2), 0.8, -0.7);
    let shift = Vector2::new(1.5, 0.4);
    let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
    let closed = smeared_kernel(&c, shift, &params, &spec).unwrap();
    let oracle = spectral_smeared_oracle(&f, &g, shift, &v, &spec).unwrap();
    let rel = (closed.value - oracle.value).norm() / oracle.value.norm();
    assert!(
        rel < 1e-5,
        "closed {} oracle {} rel {rel:e}",
        closed.value,
        oracle.value
    );
}

#[test]
fn spectral_oracle_matches_closed_form_on_charged_and_neutral_pairs() {
    let spec = QuadSpec::default();
    let v = Regulator::SharpCutoff { r: 1.0 };
    let params = KernelParams::from_regulator(&v, &spec).unwrap();
    for (i, (f, g, shift)) in common::equivalence_pairs().into_iter().enumerate() {
        let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
        let closed = smeared_kernel(&c, shift, &params, &spec).unwrap();
        let oracle = spectral_smeared_oracle(&f, &g, shift, &v, &spec).unwrap();
        let rel = (closed.value - oracle.value).norm() / oracle.value.norm();
        println!(
            "pair {i}: q_f q_g = {:.3} closed {} oracle {} rel {rel:e}",
            f.charge().unwrap() * g.charge().unwrap(),
            closed.value,
            oracle.value
        );
        assert!(rel < 1e-5, "pair {i}: rel {rel:e}");
    }
}

#[test]
fn neutral_density_decays_under_spacelike_shift() {
    let spec = QuadSpec::default();
    let params = KernelParams::new(1.0).unwrap();
    // A dipole moment along x1 would leave a 1/t tail; concentric bumps
    // have none.
    let f = TestFunction::sum(
        vec![bump((0.0, 0.0), 1.0, 1.0), bump((0.0, 0.0), 0.5, -1.0)],
        Vector2::ZERO,
        1.0,
    )
    .unwrap();
    let g = bump((0.2, 0.1), 0.9, 1.0);
    let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
    let near = smeared_kernel(&c, Vector2::new(0.0, 5.0), &params, &spec).unwrap();
    let far = smeared_kernel(&c, Vector2::new(0.0, 50.0), &params, &spec).unwrap();
    assert!(
        far.value.norm() < 0.05 * near.value.norm(),
        "{} vs {}",
        far.value,
        near.value
    );
}

#[test]
fn narrow_bumps_reproduce_the_point_kernel() {
    let spec = QuadSpec::default();
    let params = KernelParams::canonical();
    let f = bump((0.0, 0.0), 0.05, 1.0);
    let g = bump((0.0, 0.0), 0.05, 1.0);
    let z0 = Vector2::new(0.0, 3.0);
    let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
    let smeared = smeared_kernel(&c, z0, &params, &spec).unwrap();
    let point = w_reg_point(z0, &params).unwrap();
    assert!((smeared.value - point).norm() < 2e-3, "{} vs {point}", smeared.value);
}

#[test]
fn neutral_pairs_do_not_see_the_regulator() {
    let spec = QuadSpec::default();
    let f = common::dipole((0.0, 0.0), 0.6, (0.5, 0.2), 1.0);
    let g = common::dipole((0.3, 0.0), 0.5, (0.0, 0.6), 2.0);
    let shift = Vector2::new(1.0, -0.5);
    let a = spectral_smeared_oracle(&f, &g, shift, &Regulator::SharpCutoff { r: 1.0 }, &spec).unwrap();
    let b = spectral_smeared_oracle(
        &f,
        &g,
        shift,
        &Regulator::SmoothExponential { scale: 3.0 },
        &spec,
    )
    .unwrap();
    assert!((a.value - b.value).norm() < 1e-8, "{} vs {}", a.value, b.value);
}

#[test]
fn self_pairing_at_zero_shift_is_real() {
    let spec = QuadSpec::default();
    let v = Regulator::SharpCutoff { r: 1.0 };
    let f = bump((0.1, -0.2), 0.8, 1.3);
    let o = spectral_smeared_oracle(&f, &f, Vector2::ZERO, &v, &spec).unwrap();
    assert!(o.value.im.abs() < 1e-9, "{}", o.value);
    let params = KernelParams::from_regulator(&v, &spec).unwrap();
    let c = Correlation::correlate(&f, &f, &GridSpec::default()).unwrap();
    let s = smeared_kernel(&c, Vector2::ZERO, &params, &spec).unwrap();
    assert!(s.value.im.abs() < 1e-9, "{}", s.value);
}

#[test]
fn plane_quadrature_agrees_with_marginal_route() {
    let spec = QuadSpec::default();
    let params = KernelParams::canonical();
    let f = bump((0.0, 0.0), 1.0, 1.0);
    let g = bump((0.3, -0.2), 0.8, -0.7);
    let c = Correlation::correlate(&f, &g, &GridSpec::default()).unwrap();
    for shift in [Vector2::new(1.5, 0.4), Vector2::new(0.0, 4.0), Vector2::new(0.2, 0.1)] {
        let fast = smeared_kernel(&c, shift, &params, &spec).unwrap();
        let plane = smeared_kernel_2d(&c, shift, &params, &spec).unwrap();
        let gap = (fast.value - plane.value).norm();
        assert!(
            gap <= 1e-6 * (1.0 + fast.value.norm()) + c.interpolation_error(),
            "shift {shift:?}: {} vs {} gap {gap:e}",
            fast.value,
            plane.value
        );
    }
}
