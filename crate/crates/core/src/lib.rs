//! Pseudospectra of complex matrices and their Lie products.
//!
//! The crate computes eps-pseudospectra and pseudospectral radii of dense
//! complex matrices, probes the symmetry of pseudospectra of commutators,
//! classifies normal matrices with at most two distinct eigenvalues by that
//! symmetry, and verifies canonical commutator-preserving maps against
//! pluggable radial unitary-similarity-invariant functions.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `pspec` binary for a command-line surface over the same operations.

pub mod classify;
pub mod cli;
pub mod gram_cubic;
pub mod io;
pub mod mat;
pub mod preserve;
pub mod pseudo;

pub use mat::{CMatrix, Complex64, MatError, RankOneNilpotent};
