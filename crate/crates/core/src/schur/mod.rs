//! Schur-basis blocks for `S_n` acting on qubits.
//!
//! The basis state `|lambda, q>` at the canonical multiplicity slot is
//! `lambda1` singlets on qubit pairs `(2l, 2l+1)` followed by a normalized
//! Dicke state with `q` excitations on the remaining `n - 2 lambda1` qubits.

mod blocks;
mod felement;
mod irrep;

pub use blocks::{
    block_operator, block_operator_with, ground_state, ground_state_of_blocks, ground_state_with, BlockOperator, FTensor, GroundStateResult,
    DEFAULT_DEGENERACY_TOLERANCE,
};
pub use felement::{f_block, f_element, FBlock};
pub use irrep::{enumerate_irreps, IrrepLabel};
