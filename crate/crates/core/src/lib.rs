//! Simulation of entanglement transfer from a three-mode quantized radiation
//! field to three spatially separated qubits, each realized as a two-level
//! atom resonantly coupled to a cavity mode.
//!
//! The pipeline has three stages:
//!
//! 1. a field state over the three-mode Fock basis ([`states`]),
//! 2. injection of each mode into its cavity through a beam-splitter loss
//!    channel followed by resonant Jaynes-Cummings evolution ([`transfer`]),
//! 3. entanglement and mixedness figures of merit for the resulting
//!    three-qubit density matrix ([`measures`]).
//!
//! [`qmath`] supplies the small dense complex linear algebra (Hermitian
//! eigenvalues, partial transpose, partial trace) everything else builds on,
//! and [`analytic`] collects closed-form reference expressions used to
//! cross-validate the numeric pipeline, including published variants that
//! fail basic invariants and their corrected forms.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure functions of
//! immutable inputs and are safe to evaluate concurrently.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod measures;
pub mod qmath;
pub mod states;
pub mod transfer;

mod error;

pub use error::Error;
pub use num_complex::Complex64 as C64;
