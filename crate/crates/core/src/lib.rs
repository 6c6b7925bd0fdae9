//! Circuit-to-Hamiltonian constructions with Johnson-graph clocks, fine-grained
//! reductions from SAT to local Hamiltonians and partition functions, and a
//! shifted-grid partition-function estimator, all sized for exact checking.
//!
//! Bit order is fixed crate-wide: qubit 0 is the most significant bit of a
//! dense basis index.

pub mod circuit;
pub mod clock;
pub mod cnf;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod par;
pub mod qpf;
pub mod reductions;
pub mod rng;
pub mod spectrum;

pub use error::{Error, Result};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Qubit-count guard for dense matrices.
pub const DENSE_GUARD: usize = 14;

/// Qubit-count guard for matrix-free Lanczos.
pub const LANCZOS_GUARD: usize = 26;
