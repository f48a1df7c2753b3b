//! Exact-arithmetic toolkit for conservation-operator processes on symmetric Fock space
//! and the symmetric-function quantities of asymptotic representation theory.
//!
//! Every value is computed over exact rationals (or Gaussian rationals). Decimal strings are
//! produced only when rendering reports.
//!
//! Module map:
//! - [`exactnum`]: rationals, Gaussian rationals, truncated power series, dense matrices,
//!   quadratic surds.
//! - [`combinatorics`]: partitions, signatures, set and pair partitions, Frobenius coordinates.
//! - [`symfunc`]: ordinary, shifted, factorial and q-interpolation Schur evaluations.
//! - [`characters`]: boundary specializations, Thoma characters, Murnaghan–Nakayama.
//! - [`fock`]: coherent-state joint moments of conservation processes.
//! - [`asymptotics`]: LLN/CLT drivers and convergence reports.

pub mod asymptotics;
pub mod characters;
pub mod combinatorics;
pub mod error;
pub mod exactnum;
pub mod fock;
pub mod symfunc;

pub use error::{Error, Result};
