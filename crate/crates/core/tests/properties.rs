mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use symsim_core::algebra::{
    enumerate_monomials, gse_regular, regular_rep_of, structure_constant, MonomialIndex, SymmetricOperator,
};
use symsim_core::dynamics::{
    empirical_loss, evolution_from_hamiltonian, expectation, expectation_blocks, LabeledSample,
};
use symsim_core::linalg;
use symsim_core::schur::{block_operator, enumerate_irreps, f_block, ground_state, BlockOperator};

fn monomial(n: usize) -> impl Strategy<Value = MonomialIndex> {
    (0..=n, 0..=n, 0..=n).prop_filter_map("sum exceeds n", move |(a, b, c)| {
        (a + b + c <= n).then(|| MonomialIndex::new(n - a - b - c, a, b, c))
    })
}

fn hamiltonian(max_n: usize) -> impl Strategy<Value = SymmetricOperator> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((monomial(n), -2.0f64..2.0), 1..=5)
            .prop_map(move |terms| SymmetricOperator::from_terms(n, terms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_symmetry((i, j, k) in (1usize..=6).prop_flat_map(|n| (monomial(n), monomial(n), monomial(n)))) {
        let ij = structure_constant(&i, &j, &k).unwrap();
        let ji = structure_constant(&j, &i, &k).unwrap();
        prop_assert!((ij - ji.conj()).norm() < 1e-9 * ij.norm().max(1.0));
    }

    #[test]
    fn identity_column_is_the_coefficient_vector(h in hamiltonian(5)) {
        let n = h.n();
        let rep = regular_rep_of(&h).unwrap();
        let col = MonomialIndex::identity(n).rank();
        for k in enumerate_monomials(n).unwrap() {
            let want = Complex64::new(h.coefficient(&k), 0.0);
            prop_assert!((rep.matrix()[(k.rank(), col)] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn gse_is_positively_homogeneous_and_shift_covariant(h in hamiltonian(6), alpha in 0.1f64..5.0, c in -3.0f64..3.0) {
        let n = h.n();
        let base = gse_regular(&h).unwrap();
        let scaled = gse_regular(&h.scaled(alpha)).unwrap();
        prop_assert!((scaled - alpha * base).abs() < 1e-8 * (1.0 + scaled.abs()));
        let mut shifted = h.clone();
        shifted.add_term(MonomialIndex::identity(n), c).unwrap();
        prop_assert!((gse_regular(&shifted).unwrap() - base - c).abs() < 1e-8 * (1.0 + base.abs()));
        prop_assert!((ground_state(&shifted).unwrap().energy - base - c).abs() < 1e-8 * (1.0 + base.abs()));
    }

    #[test]
    fn regular_and_block_energies_agree(h in hamiltonian(7)) {
        let a = gse_regular(&h).unwrap();
        let b = ground_state(&h).unwrap().energy;
        prop_assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()));
    }

    #[test]
    fn ground_state_conventions(h in hamiltonian(8)) {
        let g = ground_state(&h).unwrap();
        let norm: f64 = g.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        let first = g.amplitudes.iter().find(|z| z.norm() > 1e-10).unwrap();
        prop_assert!(first.im == 0.0 && first.re > 0.0);
        prop_assert_eq!(g.degenerate_irreps[0], g.lambda_min);
        prop_assert!(g.degenerate_irreps.windows(2).all(|w| w[0].lambda1 < w[1].lambda1));
    }

    #[test]
    fn f_blocks_are_hermitian(i in (1usize..=12).prop_flat_map(monomial)) {
        for irrep in enumerate_irreps(i.n()).unwrap() {
            let f = f_block(&i, &irrep).unwrap();
            prop_assert!(linalg::hermitian_deviation(&f.matrix) < 1e-10);
        }
    }

    #[test]
    fn evolution_composes(h in hamiltonian(7), t1 in -2.0f64..2.0, t2 in -2.0f64..2.0) {
        let u1 = evolution_from_hamiltonian(&h, t1).unwrap();
        let u2 = evolution_from_hamiltonian(&h, t2).unwrap();
        let u12 = evolution_from_hamiltonian(&h, t1 + t2).unwrap();
        let composed = u1.compose(&u2).unwrap();
        for (a, b) in composed.blocks().iter().zip(u12.blocks()) {
            prop_assert!(linalg::max_abs_diff(a, b) < 1e-10);
        }
        prop_assert!(u12.unitary_deviation().1 < 1e-10);
    }

    #[test]
    fn energy_is_conserved(h in hamiltonian(7), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_block_state(h.n(), &mut rng);
        let identity = BlockOperator::identity(h.n()).unwrap();
        let e0 = expectation(&h, &identity, &rho).unwrap();
        for step in 1..=10 {
            let u = evolution_from_hamiltonian(&h, 0.3 * step as f64).unwrap();
            prop_assert!((expectation(&h, &u, &rho).unwrap() - e0).abs() < 1e-9);
        }
    }

    #[test]
    fn loss_is_odd_in_labels(h in hamiltonian(5), seed in any::<u64>(), t in 0.0f64..3.0) {
        let mut rng = common::rng(seed);
        let n = h.n();
        let states: Vec<_> = (0..4).map(|_| common::random_block_state(n, &mut rng)).collect();
        let labels = [1i64, -1, -1, 1];
        let u = evolution_from_hamiltonian(&h, t).unwrap();
        let make = |sign: i64| -> Vec<LabeledSample> {
            states.iter().zip(labels).map(|(s, y)| LabeledSample::new(s.clone(), sign * y).unwrap()).collect()
        };
        let plus = empirical_loss(&make(1), &h, &u).unwrap();
        let minus = empirical_loss(&make(-1), &h, &u).unwrap();
        prop_assert!((plus + minus).abs() < 1e-12);
    }
}

#[test]
fn states_stay_physical_over_many_steps() {
    let mut rng = common::rng(21);
    let h = common::random_hamiltonian(6, 5, &mut rng);
    let mut rho = common::random_block_state(6, &mut rng);
    let u = evolution_from_hamiltonian(&h, 0.05).unwrap();
    let ob = block_operator(&h).unwrap();
    let identity = BlockOperator::identity(6).unwrap();
    let e0 = expectation_blocks(&ob, &identity, &rho).unwrap();
    for _ in 0..100 {
        rho = rho.evolved(&u).unwrap();
    }
    assert!((rho.trace() - 1.0).abs() < 1e-9);
    assert!(rho.min_eigenvalue() > -1e-9);
    assert!((expectation_blocks(&ob, &identity, &rho).unwrap() - e0).abs() < 1e-9);
}
