//! Numerical laboratory for the spherically symmetric α²-dynamo eigenproblem.
//!
//! The crate builds Bessel-function channel bases for the poloidal (Robin)
//! and toroidal (Dirichlet) fields, assembles the truncated Galerkin system,
//! and solves it both as a 2N×2N block eigenproblem and through the
//! Feshbach-reduced determinant. Around that core sit the large-ℓ tools:
//! the effective Dirichlet shift that replaces the Robin condition, the
//! anharmonic-oscillator expansion of smeared-boundary wells, and the
//! osculating-pair construction that makes the zeroth-order coupled problem
//! solvable in closed form. Finite-difference solvers in [`oracle`] provide
//! independent reference values for all of it.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod basis;
pub mod boundary;
pub mod cli;
pub mod config;
pub mod coupling;
pub mod dynamo;
pub mod error;
pub mod largeell;
pub mod numerics;
pub mod oracle;
pub mod specialfn;
pub mod validation;

pub use error::{Error, Result};
