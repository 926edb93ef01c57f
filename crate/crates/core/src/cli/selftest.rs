//! Quick checks of exactly known values.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{log_branch_lhs, Poly2, PolyPair};
use crate::error::Result;
use crate::geometry::Vector2;
use crate::kernel::{w_chiral_point, w_reg_point, KernelParams};
use crate::quadrature::QuadSpec;
use crate::scattering::{build_factors, extrapolate, AmplitudeSample};
use crate::testfn::{GridSpec, TestFunction};
use crate::weyl::{vev, WeylFactor, WeylWord, DEFAULT_CHARGE_TOL};

type Check = (&'static str, fn(u64) -> Result<bool>);

const CHECKS: [Check; 7] = [
    ("empty word has unit expectation", empty_word),
    ("charged single factor has zero expectation", single_factor),
    ("log of one integrates to zero", log_of_one),
    ("log of minus one gives i pi q", log_of_minus_one),
    ("constant series extrapolates to itself", constant_series),
    ("factor charges and translations", factors),
    ("chiral split of the kernel", chiral_split),
];

fn bump(q: f64) -> Result<TestFunction> {
    TestFunction::radial_bump(Vector2::ZERO, (1.0, 1.0), 1.0)?.normalize_to_charge(q)
}

fn empty_word(_: u64) -> Result<bool> {
    let v = vev(
        &WeylWord::default(),
        &KernelParams::canonical(),
        &QuadSpec::default(),
        &GridSpec::default(),
        DEFAULT_CHARGE_TOL,
    )?;
    Ok(v.value == Complex64::new(1.0, 0.0))
}

fn single_factor(_: u64) -> Result<bool> {
    let word = WeylWord::new(vec![WeylFactor::new(bump(0.5)?, Vector2::ZERO, 1.0)]);
    let v = vev(
        &word,
        &KernelParams::canonical(),
        &QuadSpec::default(),
        &GridSpec::default(),
        DEFAULT_CHARGE_TOL,
    )?;
    Ok(v.value == Complex64::new(0.0, 0.0))
}

fn log_of_one(_: u64) -> Result<bool> {
    let one = Poly2::constant(1.0)?;
    let pp = PolyPair { h1: one.clone(), h2: one };
    let r = log_branch_lhs(&pp, &bump(1.0)?, 1e-9, &QuadSpec::default())?;
    Ok(r.value.norm() < 1e-8)
}

fn log_of_minus_one(_: u64) -> Result<bool> {
    let pp = PolyPair {
        h1: Poly2::constant(-1.0)?,
        h2: Poly2::constant(1.0)?,
    };
    let r = log_branch_lhs(&pp, &bump(0.6)?, 1e-9, &QuadSpec::default())?;
    Ok((r.value - Complex64::new(0.0, 0.6 * PI)).norm() < 1e-8)
}

fn constant_series(_: u64) -> Result<bool> {
    let c = Complex64::new(-0.5, 0.25);
    let samples: Vec<AmplitudeSample> = [20.0, 100.0, 1000.0]
        .iter()
        .map(|&t| AmplitudeSample { big_t: t, s_t: c, err: 0.0 })
        .collect();
    Ok(extrapolate(&samples, c)?.gap() == 0.0)
}

fn factors(_: u64) -> Result<bool> {
    let (f, g) = (bump(0.7)?, bump(-1.2)?);
    let fac = build_factors(&f, &g);
    let mut q = 0.0;
    for x in &fac {
        q += x.effective_charge()?;
    }
    let e2 = E * E;
    let expected = [(e2, -e2), (e2, e2), (-e2, -e2), (-e2, e2)];
    let placed = fac
        .iter()
        .zip(expected)
        .all(|(x, (a, b))| x.translation(e2, 0.0) == Vector2::new(a, b));
    Ok(q.abs() < 1e-12 && placed)
}

fn chiral_split(seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = KernelParams::canonical();
    for _ in 0..1000 {
        let z = Vector2::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let w = w_reg_point(z, &p)?;
        let split = w_chiral_point(z.x_plus(), &p)? + w_chiral_point(z.x_minus(), &p)?;
        if (w - split).norm() > 1e-14 * (1.0 + w.norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Run every check, printing one line each; true when all pass.
pub fn run(seed: u64) -> bool {
    let mut all = true;
    for (name, check) in CHECKS {
        let ok = match check(seed) {
            Ok(ok) => ok,
            Err(e) => {
                eprintln!("{name}: {e}");
                false
            }
        };
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        all &= ok;
    }
    all
}
