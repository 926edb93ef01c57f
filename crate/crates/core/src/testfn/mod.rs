//! Test functions on 2d Minkowski space: bumps, transformations, charges and
//! correlations.

mod correlation;
mod fft2;
mod function;
mod smearing;

pub use crate::geometry::{Rect, Vector2};
pub use correlation::{Correlation, GridSpec, Marginal, MIN_SAMPLES_PER_RADIUS};
pub use function::{mollifier, Kind, TestFunction, TestFunctionSpec};
pub use smearing::{scale, SmearingKernel};

/// `C(z) = ∫ f(z+y) g(y) d²y` on a grid chosen by `grid`.
pub fn correlate(
    f: &TestFunction,
    g: &TestFunction,
    grid: &GridSpec,
) -> crate::Result<Correlation> {
    Correlation::correlate(f, g, grid)
}
