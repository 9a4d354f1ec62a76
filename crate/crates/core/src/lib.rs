//! Simulation and feasibility toolkit for cavity-enhanced polarization qubits.
//!
//! Logical qubits live in the horizontal/vertical polarization subspace of a
//! harmonic bundle of longitudinal cavity modes. Single-qubit gates are built
//! by accumulating small per-transit rotations, and entangling gates come from
//! a cross-Kerr interaction between arms.
//!
//! Modules:
//! - [`cavity`]: longitudinal mode comb and bundle selection.
//! - [`polarization`]: register state, SU(2) gates and Euler form.
//! - [`transit`]: per-transit accumulation and the Monte Carlo noise study.
//! - [`entanglement`]: controlled-phase, CNOT and the pairwise Kerr unitary.
//! - [`fock`]: truncated photon-number space used as an independent oracle.
//! - [`oracle`]: equivalence checks between the qubit and photon-number models.
//! - [`feasibility`]: nonlinear phase budget and linewidth requirements.
//! - [`circuit`]: line-oriented circuit programs.

pub mod cavity;
pub mod circuit;
pub mod entanglement;
pub mod error;
pub mod feasibility;
pub mod fock;
pub mod oracle;
pub mod polarization;
pub mod transit;

pub use error::{Error, Result};
pub use num_complex::Complex64;
