//! Numerical reproduction of the scattering amplitude of charged
//! infraparticles in the two-dimensional massless free scalar field.
//!
//! The amplitude of two Weyl excitations with charges `q_f`, `q_g` tends to
//! `exp(-i q_f q_g / 2)` as the time-averaging scale `T` grows. Every step of
//! that computation is available separately:
//!
//! - [`testfn`]: bump test functions, their charges and correlations.
//! - [`quadrature`]: adaptive quadrature for log-singular and oscillatory integrals.
//! - [`kernel`]: the regularized two-point function, its chiral parts and the
//!   momentum-space cross-check.
//! - [`weyl`]: vacuum expectation values of products of Weyl operators.
//! - [`asymptotics`]: checks of the log-limit and large-translation asymptotics.
//! - [`scattering`]: the amplitude pipeline and the neutrality-decay study.
//! - [`cli`]: the `infrascat` command-line front end.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod quadrature;
pub mod scattering;
pub mod testfn;
pub mod weyl;

pub use error::{Error, Result};
pub use geometry::{Rect, Vector2};
