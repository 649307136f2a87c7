//! Polynomial-time simulation of permutation-invariant qubit systems.
//!
//! Operators are expanded in the symmetrized Pauli basis `A_i`. Ground-state
//! energies come either from the regular representation of the algebra
//! ([`algebra::gse_regular`]) or from the Schur-basis blocks
//! ([`schur::ground_state`]); [`dynamics`] evaluates expectation values under
//! equivariant unitaries on the same blocks. [`oracle`] holds a brute-force
//! `2^n` reference for small `n`.

pub mod algebra;
pub mod combinatorics;
pub mod dynamics;
mod error;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod schur;

pub use error::{Error, Result};
