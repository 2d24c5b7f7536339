//! Verification toolkit for the reflector-form (biquaternion) Dirac equation
//! carried into the mapped space M, the circular-orbit bound state it admits,
//! and the probability laws that relate M back to ordinary space L.
//!
//! Modules, bottom up:
//!
//! - [`algebra`]: biquaternions, the rotated arc/radial basis, block matrices.
//! - [`geometry`]: L and M coordinates, the arc bijection, metrics and
//!   potential rescaling.
//! - [`bohr_model`]: closed-form orbit levels, Dirac comparison energies,
//!   transitions and angular-momentum bookkeeping.
//! - [`dirac_field`]: plane-wave solutions and finite-difference residuals of
//!   the Dirac and photon equations.
//! - [`density`]: single-state and orientation-averaged probability laws.
//! - [`suite`]: aggregated invariant checks with pass/fail reporting.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bohr_model;
pub mod density;
pub mod dirac_field;
pub mod error;
pub mod geometry;
pub mod suite;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
