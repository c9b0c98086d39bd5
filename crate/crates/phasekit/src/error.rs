use num_complex::Complex64;
use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum PhaseError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "quadrature did not converge after {refinements} refinements \
         (estimate {estimate:.6e}, last error {error:.3e})"
    )]
    NonConvergence {
        refinements: u32,
        estimate: f64,
        error: f64,
    },

    #[error("point {x} lies outside the sampled domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("index {requested} exceeds the closed-form cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("spectrum tail bound {tail:.3e} exceeds {tol:.3e}")]
    TailTooHeavy { tail: f64, tol: f64 },

    #[error("grid needs at least {need} points per axis for the stencil, got {got}")]
    GridTooSmall { need: usize, got: usize },

    #[error("field norm on the grid interior is below 1e-300")]
    ZeroField,

    #[error("scale mismatch: {0}")]
    ScaleMismatch(String),

    #[error(
        "scale-window sensitivity: doubling the window moved the value by {shift:.3e} \
         (value {value}, reported tolerance {tolerance:.3e})"
    )]
    WindowSensitive {
        value: Complex64,
        tolerance: f64,
        shift: f64,
    },
}

pub type Result<T> = std::result::Result<T, PhaseError>;
