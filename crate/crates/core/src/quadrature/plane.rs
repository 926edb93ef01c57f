//! Iterated adaptive integration over rectangles with singular lines.
//!
//! The outer variable is `z0` and the inner one `z1`. A line that is not a
//! `z0 = const` slice meets each inner slice in one point, which becomes a
//! graded singular point of the inner integral. The outer integrand is only
//! non-smooth where such a point leaves the box, where two lines cross, or on
//! `z0 = const` lines; those abscissae are graded singular points outside.

use std::cell::Cell;

use num_complex::Complex64;

use super::adaptive::{integrate_with_errors, Tolerance};
use super::{LineKind, QuadResult, QuadSpec, SingularLine};
use crate::geometry::{Rect, Vector2};

/// Integrate `f` over `rect`, splitting and grading toward `lines`.
pub fn integrate_2d<F>(f: F, rect: &Rect, lines: &[SingularLine], spec: &QuadSpec) -> QuadResult
where
    F: Fn(Vector2) -> Complex64,
{
    integrate_2d_with_breaks(f, rect, lines, &[], &[], spec)
}

/// As [`integrate_2d`], with additional plain breakpoints in each coordinate
/// (for integrands that are only piecewise smooth on a known grid).
pub fn integrate_2d_with_breaks<F>(
    f: F,
    rect: &Rect,
    lines: &[SingularLine],
    breaks0: &[f64],
    breaks1: &[f64],
    spec: &QuadSpec,
) -> QuadResult
where
    F: Fn(Vector2) -> Complex64,
{
    let (lo0, hi0) = (rect.lo.x0, rect.hi.x0);
    let (lo1, hi1) = (rect.lo.x1, rect.hi.x1);
    let w0 = (hi0 - lo0).abs();
    if w0 == 0.0 || hi1 == lo1 {
        return QuadResult::exact(Complex64::new(0.0, 0.0));
    }

    let outer_singular = outer_singular_points(lines, lo1, hi1);
    let inner_tol = Tolerance {
        abs: spec.abs_tol / (4.0 * w0),
        rel: spec.rel_tol / 4.0,
    };
    let inner_ok = Cell::new(true);
    let inner_evals = Cell::new(0usize);
    let mut sing1 = Vec::with_capacity(lines.len());

    let outer = integrate_with_errors(
        |z0| {
            sing1.clear();
            sing1.extend(lines.iter().filter_map(|l| l.z1_at(z0)));
            let r = integrate_with_errors(
                |z1| (f(Vector2::new(z0, z1)), 0.0),
                lo1,
                hi1,
                breaks1,
                &sing1,
                spec,
                inner_tol,
            );
            if !r.converged {
                inner_ok.set(false);
            }
            inner_evals.set(inner_evals.get() + r.evaluations);
            (r.value, r.error)
        },
        lo0,
        hi0,
        breaks0,
        &outer_singular,
        spec,
        spec.tolerance(),
    );

    QuadResult {
        value: outer.value,
        error: outer.error,
        converged: outer.converged && inner_ok.get(),
        evaluations: inner_evals.get(),
    }
}

fn outer_singular_points(lines: &[SingularLine], lo1: f64, hi1: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    for l in lines {
        match l.kind {
            LineKind::X0Const => pts.push(l.offset),
            // z1 = c - z0 and z1 = z0 - c leave the box through its edges.
            LineKind::XPlusConst => pts.extend([l.offset - lo1, l.offset - hi1]),
            LineKind::XMinusConst => pts.extend([l.offset + lo1, l.offset + hi1]),
            LineKind::X1Const => {}
        }
    }
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            use LineKind::*;
            let crossing = match (a.kind, b.kind) {
                (XPlusConst, XMinusConst) => Some(0.5 * (a.offset + b.offset)),
                (XMinusConst, XPlusConst) => Some(0.5 * (a.offset + b.offset)),
                (XPlusConst, X1Const) => Some(a.offset - b.offset),
                (X1Const, XPlusConst) => Some(b.offset - a.offset),
                (XMinusConst, X1Const) => Some(a.offset + b.offset),
                (X1Const, XMinusConst) => Some(b.offset + a.offset),
                _ => None,
            };
            pts.extend(crossing);
        }
    }
    pts
}
