//! Smeared kernels `∫ w_reg(z + shift) C(z) d²z`.
//!
//! The kernel is the sum of two chiral pieces, each a function of one
//! light-cone coordinate, so each piece integrates against the matching
//! light-cone marginal of `C`; the singular line `(z + shift)^± = 0` becomes
//! a singular point of a 1d integral.

use num_complex::Complex64;

use super::closed::chiral;
use super::{Chirality, KernelParams};
use crate::error::Result;
use crate::geometry::Vector2;
use crate::quadrature::{integrate_2d_with_breaks, QuadResult, QuadSpec, SingularLine, Tolerance};
use crate::testfn::{Correlation, Marginal};

fn chiral_part(m: &Marginal, s: f64, mu: f64, tol: Tolerance, spec: &QuadSpec) -> QuadResult {
    m.integrate_against(|u| chiral(u + s, mu), &[-s], tol, spec)
}

/// `∫ w^c(z + shift) C(z) d²z` for the chiral kernel of chirality `c`.
pub fn smeared_chiral(
    c: &Correlation,
    chirality: Chirality,
    shift: Vector2,
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    let m = match chirality {
        Chirality::Plus => c.plus_marginal(),
        Chirality::Minus => c.minus_marginal(),
    };
    chiral_part(
        m,
        chirality.coordinate(shift),
        params.mu_v(),
        spec.tolerance(),
        spec,
    )
    .require_converged()
}

/// `∫ w_reg(z + shift) C(z) d²z`.
pub fn smeared_kernel(
    c: &Correlation,
    shift: Vector2,
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    let tol = Tolerance {
        abs: 0.5 * spec.abs_tol,
        rel: spec.rel_tol,
    };
    let mu = params.mu_v();
    let p = chiral_part(c.plus_marginal(), shift.x_plus(), mu, tol, spec);
    let m = chiral_part(c.minus_marginal(), shift.x_minus(), mu, tol, spec);
    QuadResult {
        value: p.value + m.value,
        error: p.error + m.error,
        converged: p.converged && m.converged,
        evaluations: p.evaluations + m.evaluations,
    }
    .require_converged()
}

/// `∫ D0(z + shift) C(z) d²z` as `w(C, shift) - w(C reflected, -shift)`.
pub fn smeared_commutator(
    c: &Correlation,
    shift: Vector2,
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    let a = smeared_kernel(c, shift, params, spec)?;
    let b = smeared_kernel(&c.reflected(), -shift, params, spec)?;
    Ok(QuadResult {
        value: a.value - b.value,
        error: a.error + b.error,
        converged: true,
        evaluations: a.evaluations + b.evaluations,
    })
}

/// The same integral done directly in the plane over the bicubic
/// interpolant of `C`, with both light-cone lines declared singular. Slower
/// and limited by the interpolation error; used as a cross-check.
pub fn smeared_kernel_2d(
    c: &Correlation,
    shift: Vector2,
    params: &KernelParams,
    spec: &QuadSpec,
) -> Result<QuadResult> {
    let mu = params.mu_v();
    let (b0, b1) = c.grid_lines();
    let lines = [
        SingularLine::x_plus(-shift.x_plus()),
        SingularLine::x_minus(-shift.x_minus()),
    ];
    let r = integrate_2d_with_breaks(
        |z| {
            let cz = c.eval(z);
            let y = z + shift;
            if cz == 0.0 || y.x_plus() == 0.0 || y.x_minus() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (chiral(y.x_plus(), mu) + chiral(y.x_minus(), mu)) * cz
            }
        },
        &c.support_box(),
        &lines,
        &b0,
        &b1,
        spec,
    );
    r.require_converged()
}
