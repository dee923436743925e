//! Optimal 1→M phase-covariant quantum cloning machines for odd M.
//!
//! The crate is split along the lines of the physics:
//!
//! - [`statekit`]: dense multi-qubit kets, density operators, Paulis, partial
//!   traces and fidelities.
//! - [`symmetry`]: Dicke states, symmetrization projectors and post-selected
//!   projection.
//! - [`angular`]: exact Clebsch–Gordan coefficients and the expansion
//!   coefficients of the cloner outputs, in arbitrary-precision arithmetic.
//! - [`cloner`]: the universal cloner and both phase-covariant constructions,
//!   plus covariance and equivalence checks.
//! - [`opa`]: truncated two-mode Fock-space model of the collinear parametric
//!   amplifier.
//! - [`verify`]: the invariant suites behind `pcclone verify`.

pub mod angular;
pub mod cloner;
mod error;
pub mod opa;
pub mod statekit;
pub mod symmetry;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};

/// Complex amplitude type used by all dense modules.
pub type C64 = num_complex::Complex64;
