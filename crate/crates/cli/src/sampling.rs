//! Seeded random inputs for the verification ladder.

use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symsim_core::algebra::{enumerate_monomials, MonomialIndex, SymmetricOperator};
use symsim_core::dynamics::BlockState;
use symsim_core::linalg::CMatrix;
use symsim_core::schur::enumerate_irreps;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between 1 and `max_terms` distinct monomials with coefficients in [-1, 1].
pub fn random_hamiltonian(n: usize, max_terms: usize, rng: &mut impl Rng) -> SymmetricOperator {
    let basis = enumerate_monomials(n).expect("n >= 1");
    let count = rng.random_range(1..=max_terms.clamp(1, basis.len()));
    let mut h = SymmetricOperator::new(n).expect("n >= 1");
    for i in basis.choose_multiple(rng, count) {
        h.add_term(*i, rng.random_range(-1.0..=1.0)).expect("valid monomial");
    }
    h
}

pub fn random_monomial(n: usize, rng: &mut impl Rng) -> MonomialIndex {
    *enumerate_monomials(n)
        .expect("n >= 1")
        .choose(rng)
        .expect("non-empty basis")
}

/// Entries with real and imaginary parts uniform in [-1, 1).
pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Mixed state with a random PSD block on every irrep.
pub fn random_block_state(n: usize, rng: &mut impl Rng) -> BlockState {
    let blocks: Vec<CMatrix> = enumerate_irreps(n)
        .expect("n >= 1")
        .iter()
        .map(|l| {
            let g = random_matrix(l.q_dim(), l.q_dim(), rng);
            &g * g.adjoint()
        })
        .collect();
    let total: f64 = blocks.iter().map(|b| b.trace().re).sum();
    let blocks = blocks.into_iter().map(|b| b / Complex64::new(total, 0.0)).collect();
    BlockState::new(n, blocks).expect("random blocks are a valid state")
}
