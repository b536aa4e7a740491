//! Spin-flipping matrices of n-qubit pure states and the invariants built on them.
//!
//! A pure state `|ψ⟩ = Σ a_i |i⟩` is reshaped into a coefficient matrix `C` for a
//! chosen split of the qubits into row and column qubits. The spin-flipping matrix
//! is `Ω = C υ^{⊗(n-ℓ)} Cᵀ` with `υ = [[0, 1], [-1, 0]]`, and its ℓ-fold powers are
//! `Ω^{⊙ℓ} = Ω^{⊙(ℓ-1)} υ^{⊗ℓ} Ω`. Under local invertible operators these matrices
//! transform by congruence, so their ranks are SLOCC invariants; under local
//! unitaries the congruence is unitary, so their singular values are LU invariants.
//!
//! Modules:
//!
//! - [`state`]: amplitude vectors, named states, local operators and random sampling.
//! - [`coeff`]: qubit partitions and coefficient matrices.
//! - [`omega`]: the antisymmetric kernel, spin-flipping matrices and their powers,
//!   and a numerical check of the congruence relation.
//! - [`invariants`]: singular values, numerical rank, determinants and the closed
//!   forms (concurrence, n-tangle, `S`).
//! - [`classify`]: SLOCC classification for two and three qubits, LU/SLOCC
//!   comparison verdicts and LU family labels.
//! - [`io`]: JSON state and operator documents.
//! - [`cli`]: the `spinflip` command-line front end.
//!
//! Qubit 1 is the most significant bit of an amplitude index throughout.

#![forbid(unsafe_code)]

pub mod classify;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod invariants;
pub mod io;
pub mod omega;
pub mod state;

pub use error::{Error, Result};

/// Complex scalar used for amplitudes and matrix entries.
pub type Complex = num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex>;

/// Default relative tolerance for numerical rank and zero tests.
pub const DEFAULT_TOL: f64 = 1e-10;
