//! Numerical kit for a phase-space representation built on Hermite-Gaussian
//! envelopes.
//!
//! A state is labeled by a discrete index `n`, a phase-space point `(X, P)`,
//! and an envelope scale pair `(a, b)` locked to `a * b = hbar / 2`. The crate
//! provides:
//!
//! * stable Hermite polynomial evaluation and log-domain normalization
//!   ([`hermite`]),
//! * Gauss-Hermite quadrature with envelope-folded weights plus an adaptive
//!   fallback ([`quadrature`]),
//! * the basis functions in position and momentum representation and a small
//!   state-description language ([`basis`]),
//! * the overlap kernel between basis members at arbitrary centers and scales,
//!   in closed form and by quadrature ([`kernel`]),
//! * the momentum-dispersion operator as dense matrices on the discrete basis
//!   and as finite-difference stencils on phase-space lattices ([`operators`]),
//! * projection of wavefunctions onto the family and the inverse
//!   reconstructions, including the scale-integral forms ([`transform`]).
//!
//! All lattice and quadrature assembly is deterministic: parallel loops write
//! disjoint slots and final sums run in index order, so byte-identical output
//! does not depend on the worker count.

pub mod basis;
pub mod error;
pub mod hermite;
pub mod kernel;
pub mod operators;
pub mod quadrature;
pub mod scales;
pub mod transform;

mod serde_util;

pub use error::{PhaseError, Result};
pub use scales::{PhaseIndex, ScaleParam};
