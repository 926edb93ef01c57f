#![allow(dead_code)]

use infrascat::asymptotics::{Poly2, PolyPair};
use infrascat::testfn::TestFunction;
use infrascat::Vector2;

pub fn bump(c: (f64, f64), r: f64, q: f64) -> TestFunction {
    TestFunction::radial_bump(Vector2::new(c.0, c.1), (r, r), 1.0)
        .unwrap()
        .normalize_to_charge(q)
        .unwrap()
}

pub fn dipole(c: (f64, f64), r: f64, off: (f64, f64), amp: f64) -> TestFunction {
    TestFunction::mirrored_difference(
        Vector2::new(c.0, c.1),
        (r, r),
        Vector2::new(off.0, off.1),
        amp,
    )
    .unwrap()
}

/// Five charged and five neutral pairs with assorted shifts.
pub fn equivalence_pairs() -> Vec<(TestFunction, TestFunction, Vector2)> {
    vec![
        (
            bump((0.0, 0.0), 1.0, 1.0),
            bump((0.0, 0.0), 1.0, 1.0),
            Vector2::new(0.0, 0.0),
        ),
        (
            bump((0.2, 0.1), 0.7, 2.0),
            bump((-0.4, 0.3), 1.2, 0.5),
            Vector2::new(3.0, -1.0),
        ),
        (
            bump((0.0, 0.0), 1.0, -1.5),
            bump((1.0, 0.0), 0.9, 1.5),
            Vector2::new(-2.0, 6.0),
        ),
        (
            TestFunction::product_bump(Vector2::new(0.1, -0.1), (0.8, 1.1), 1.0).unwrap(),
            bump((0.0, 0.0), 0.6, 1.0),
            Vector2::new(0.5, 0.5),
        ),
        (
            bump((0.0, 0.0), 1.0, 1.0).boost(0.4),
            bump((0.3, 0.0), 0.8, -0.6),
            Vector2::new(4.0, 1.0),
        ),
        (
            dipole((0.0, 0.0), 0.6, (0.5, 0.2), 1.0),
            dipole((0.0, 0.0), 0.6, (0.5, 0.2), 1.0),
            Vector2::new(0.0, 0.0),
        ),
        (
            dipole((0.0, 0.0), 0.5, (0.0, 0.6), 2.0),
            bump((0.5, 0.5), 0.9, 1.0),
            Vector2::new(1.0, 2.0),
        ),
        (
            bump((0.0, 0.0), 0.8, 1.0),
            dipole((0.2, 0.0), 0.7, (0.8, 0.0), 1.0),
            Vector2::new(-3.0, 0.5),
        ),
        (
            dipole((0.0, 0.0), 0.5, (0.6, 0.6), 1.0),
            dipole((0.1, 0.0), 0.4, (0.5, -0.2), 1.5),
            Vector2::new(2.0, 2.0),
        ),
        (
            dipole((0.0, 0.0), 0.6, (0.7, 0.0), 1.0).boost(-0.3),
            bump((0.0, 0.0), 1.0, 0.5),
            Vector2::new(0.0, -5.0),
        ),
    ]
}

/// Five fixed `(h1, h2)` pairs: three with `h1` of fixed sign on the unit
/// disk and two whose `h1` vanishes along a straight line through it.
pub fn fixed_poly_pairs() -> Vec<PolyPair> {
    let p = |c: Vec<Vec<f64>>| Poly2::new(c).unwrap();
    vec![
        PolyPair {
            h1: p(vec![vec![2.0, 0.0, 1.0], vec![0.0], vec![1.0]]),
            h2: Poly2::affine(0.0, 0.0, 1.0).unwrap(),
        },
        PolyPair {
            h1: p(vec![vec![-1.0], vec![0.0], vec![-1.0]]),
            h2: Poly2::affine(0.5, 0.0, 1.0).unwrap(),
        },
        PolyPair {
            h1: Poly2::shifted_square(-1.0, 5.0, 0.0).unwrap(),
            h2: Poly2::affine(-5.0, 1.0, 0.0).unwrap(),
        },
        PolyPair {
            h1: Poly2::affine(0.0, 1.0, 0.0).unwrap(),
            h2: Poly2::constant(1.0).unwrap(),
        },
        PolyPair {
            h1: Poly2::affine(0.3, 1.0, -1.0).unwrap(),
            h2: Poly2::constant(-1.0).unwrap(),
        },
    ]
}
