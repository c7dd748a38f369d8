//! Product formulas for Hamiltonian time evolution.
//!
//! Given a splitting H = Σ_j H_j of a Hamiltonian into simpler terms, this
//! crate constructs the classic splitting formulas — Lie-Trotter, the
//! palindromic second-order formula, and the recursive symmetric
//! construction of arbitrary even order — evaluates them on dense matrices,
//! compiles them into elementary quantum gates for Pauli-string terms, and
//! reproduces the error-scaling and step-count-bound experiments that
//! validate the construction.
//!
//! Modules:
//! * [`linalg`] — dense complex matrix kernel (products, Kronecker products,
//!   matrix exponential, spectral norm).
//! * [`hamiltonian`] — weighted Pauli strings, chain-model builders, dense
//!   realization.
//! * [`formulas`] — schedules, their evaluation, and the exponential-count
//!   bounds.
//! * [`circuits`] — compilation of Pauli exponentials and whole splitting
//!   schedules into {Had, Rz, CNOT, S} gates.
//! * [`experiments`] — deterministic CSV-emitting validation drivers.
//! * [`fixtures`] — the built-in non-commuting 2x2 splitting benchmark.

pub mod circuits;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod formulas;
pub mod hamiltonian;
pub mod linalg;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Repo-wide float output format: 17 significant digits, scientific.
/// Every CSV and text emitter uses this, keeping output locale-independent
/// and byte-reproducible.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}
