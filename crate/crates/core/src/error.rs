use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("kernel evaluated on the light cone at {0:?}")]
    Singular((f64, f64)),
    #[error("quadrature did not converge: best value {value}, error estimate {error:.3e}")]
    NotConverged { value: Complex64, error: f64 },
    #[error("extrapolation did not settle: value {value}, spread {error:.3e}")]
    Extrapolation { value: Complex64, error: f64 },
    #[error("cannot rescale a function of zero charge")]
    ZeroCharge,
    #[error("correlation grid too coarse: {0:.2} samples per radius, need at least 8")]
    GridTooCoarse(f64),
    #[error("denominator magnitude below floor (log modulus {0:.1})")]
    Degenerate(f64),
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
