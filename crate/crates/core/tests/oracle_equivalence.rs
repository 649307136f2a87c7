mod common;

use num_complex::Complex64;

use symsim_core::algebra::{
    class_size_f64, enumerate_monomials, gse_regular, regular_rep_of, structure_products, ComplexElement,
    MonomialIndex, SymmetricOperator,
};
use symsim_core::dynamics::{evolution_from_hamiltonian, expectation, unitary_from_coeffs, BlockState};
use symsim_core::linalg::{self, CMatrix};
use symsim_core::oracle::{DenseOperator, Oracle};
use symsim_core::schur::{enumerate_irreps, f_block, ground_state, IrrepLabel};

fn oracle() -> Oracle {
    Oracle::default()
}

#[test]
fn structure_constants_match_dense_products() {
    let o = oracle();
    for n in 1..=3 {
        let basis = enumerate_monomials(n).unwrap();
        let dense: Vec<CMatrix> = basis
            .iter()
            .map(|i| o.dense_monomial(i).unwrap().into_matrix())
            .collect();
        for (a, i) in basis.iter().enumerate() {
            for (b, j) in basis.iter().enumerate() {
                let product = DenseOperator::new(n, &dense[a] * &dense[b]).unwrap();
                let dec = o.decompose_invariant(&product).unwrap();
                assert!(dec.residual < 1e-10, "product {i}*{j} left the algebra");
                let mut fast: std::collections::BTreeMap<MonomialIndex, Complex64> =
                    structure_products(i, j).unwrap().into_iter().collect();
                for k in &basis {
                    let got = fast.remove(k).unwrap_or_default();
                    let want = dec.coefficient(k);
                    assert!((got - want).norm() < 1e-10, "X^({i},{j})_{k}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn f_elements_match_dense_overlaps() {
    let o = oracle();
    for n in 1..=5 {
        for irrep in enumerate_irreps(n).unwrap() {
            let states: Vec<_> = (0..irrep.q_dim())
                .map(|q| o.dense_schur_state(&irrep, q).unwrap())
                .collect();
            for i in enumerate_monomials(n).unwrap() {
                let a = o.dense_monomial(&i).unwrap();
                let block = f_block(&i, &irrep).unwrap();
                for (q, bra) in states.iter().enumerate() {
                    for (qp, ket) in states.iter().enumerate() {
                        let want = bra.inner(&a.apply(ket));
                        let got = block.matrix[(q, qp)];
                        assert!((got - want).norm() < 1e-10, "F^({i},{irrep})_({q},{qp}): {got} vs {want}");
                    }
                }
            }
        }
    }
}

#[test]
fn monomials_are_orthogonal() {
    let o = oracle();
    let n = 4;
    let basis = enumerate_monomials(n).unwrap();
    let dense: Vec<CMatrix> = basis
        .iter()
        .map(|i| o.dense_monomial(i).unwrap().into_matrix())
        .collect();
    for (a, i) in basis.iter().enumerate() {
        for (b, _) in basis.iter().enumerate() {
            let ip = linalg::trace(&(dense[a].adjoint() * &dense[b]));
            let want = if a == b { class_size_f64(i) * 16.0 } else { 0.0 };
            assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-9);
        }
    }
}

#[test]
fn regular_spectrum_equals_distinct_dense_eigenvalues() {
    let o = oracle();
    let mut rng = common::rng(11);
    for n in 2..=5 {
        for _ in 0..5 {
            let h = common::random_hamiltonian(n, 4, &mut rng);
            let regular = regular_rep_of(&h).unwrap().spectrum().unwrap();
            let dense = o.exact_spectrum(&h).unwrap();
            for e in &regular {
                assert!(dense.iter().any(|d| (d - e).abs() < 1e-8), "regular eigenvalue {e} not in dense spectrum");
            }
            for d in &dense {
                assert!(regular.iter().any(|e| (d - e).abs() < 1e-8), "dense eigenvalue {d} missing");
            }
        }
    }
}

#[test]
fn three_way_ground_state_energy() {
    let o = oracle();
    let mut rng = common::rng(12);
    for n in 2..=6 {
        for _ in 0..5 {
            let h = common::random_hamiltonian(n, 5, &mut rng);
            let exact = o.exact_gse(&h).unwrap();
            let regular = gse_regular(&h).unwrap();
            let blocks = ground_state(&h).unwrap().energy;
            assert!((exact - regular).abs() < 1e-8);
            assert!((exact - blocks).abs() < 1e-8);
        }
    }
}

#[test]
fn embedded_ground_state_is_an_eigenvector() {
    let o = oracle();
    let mut rng = common::rng(13);
    for n in 2..=6 {
        let h = common::random_hamiltonian(n, 5, &mut rng);
        let g = ground_state(&h).unwrap();
        let psi = o.embed_amplitudes(&g.lambda_min, &g.amplitudes).unwrap();
        let dense = o.dense_operator(&h).unwrap();
        let residual = (dense.matrix() * psi.vector() - psi.vector() * Complex64::new(g.energy, 0.0)).norm();
        assert!(residual < 1e-8, "n = {n}: residual {residual:e}");
    }
}

#[test]
fn twirl_projects_into_the_algebra() {
    let o = oracle();
    let mut rng = common::rng(14);
    for n in 1..=4 {
        let m = DenseOperator::new(n, common::random_matrix(1 << n, 1 << n, &mut rng)).unwrap();
        let tw = o.reynolds_twirl(&m).unwrap();
        assert!(o.decompose_invariant(&tw).unwrap().residual < 1e-9);
        assert!(o.invariance_defect(&tw).unwrap() < 1e-9);
        let twice = o.reynolds_twirl(&tw).unwrap();
        assert!(linalg::max_abs_diff(twice.matrix(), tw.matrix()) < 1e-10);
        // a fixed point stays put
        let a = o.dense_monomial(&enumerate_monomials(n).unwrap()[0]).unwrap();
        assert!(linalg::max_abs_diff(o.reynolds_twirl(&a).unwrap().matrix(), a.matrix()) < 1e-12);
    }
}

#[test]
fn young_symmetrizer_reproduces_schur_states() {
    let o = oracle();
    for n in 1..=5 {
        for irrep in enumerate_irreps(n).unwrap() {
            let p = o.young_symmetrizer(&irrep).unwrap();
            let p2 = p.matrix() * p.matrix();
            assert!(linalg::max_abs_diff(&p2, p.matrix()) < 1e-9, "Pi^2 != Pi for {irrep}");
            for q in 0..irrep.q_dim() {
                let image = p.apply(&o.seed_state(&irrep, q).unwrap());
                let target = o.dense_schur_state(&irrep, q).unwrap();
                let cos = image.cosine_similarity(&target);
                assert!(cos >= 1.0 - 1e-10, "{irrep}, q = {q}: cosine {cos}");
            }
        }
    }
}

#[test]
fn dynamics_match_dense_evolution() {
    let o = oracle();
    let mut rng = common::rng(15);
    for n in 2..=5 {
        let h = common::random_hamiltonian(n, 4, &mut rng);
        let obs = common::random_hamiltonian(n, 3, &mut rng);
        let rho = common::random_block_state(n, &mut rng);
        let rho_dense = o.embed_block_state(&rho).unwrap();
        for step in 0..4 {
            let t = 0.37 * step as f64;
            let u = evolution_from_hamiltonian(&h, t).unwrap();
            let fast = expectation(&obs, &u, &rho).unwrap();
            let exact = o.exact_expectation(&obs, &h, t, &rho_dense).unwrap();
            assert!((fast - exact).abs() < 1e-8, "n = {n}, t = {t}: {fast} vs {exact}");
        }
    }
}

#[test]
fn unitary_coefficients_from_dense_exponential() {
    let o = oracle();
    let h = SymmetricOperator::heisenberg(2, 1.0).unwrap();
    let t = 0.61;
    let dense_u = linalg::expm_hermitian(o.dense_operator(&h).unwrap().matrix(), t);
    let dec = o.decompose_invariant(&DenseOperator::new(2, dense_u).unwrap()).unwrap();
    assert!(dec.residual < 1e-12);
    let u = ComplexElement::from_terms(2, dec.coefficients.clone()).unwrap();
    let from_coeffs = unitary_from_coeffs(&u).unwrap();
    let direct = evolution_from_hamiltonian(&h, t).unwrap();
    for (a, b) in from_coeffs.blocks().iter().zip(direct.blocks()) {
        assert!(linalg::max_abs_diff(a, b) < 1e-10);
    }
}

#[test]
fn block_state_embedding_preserves_trace() {
    let o = oracle();
    let mut rng = common::rng(16);
    let rho = common::random_block_state(4, &mut rng);
    let dense = o.embed_block_state(&rho).unwrap();
    assert!((linalg::trace(dense.matrix()).re - 1.0).abs() < 1e-12);
    let pure = BlockState::basis(IrrepLabel::new(4, 2).unwrap(), 0).unwrap();
    let h = SymmetricOperator::heisenberg(4, 1.0).unwrap();
    let e = o
        .exact_expectation(&h, &h, 0.0, &o.embed_block_state(&pure).unwrap())
        .unwrap();
    assert!((e + 6.0).abs() < 1e-12);
}
