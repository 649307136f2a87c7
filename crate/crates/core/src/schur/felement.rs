//! Matrix elements `F^{i,lambda}_{q,q'} = <lambda, q| A_i |lambda, q'>` in the
//! Schur basis state `|Psi>^{lambda1} (x) |Dicke(n - 2 lambda1, q)>`.
//!
//! Each Pauli word splits into `lambda1` two-qubit factors on the singlet
//! pairs and `m = n - 2 lambda1` single-qubit factors on the Dicke register.
//! Only diagonal pair factors `sigma_a (x) sigma_a` survive on a singlet (with
//! value `+1` for the identity and `-1` otherwise); their counts are `f_aa`.
//! On the Dicke register `g_{s a s'}` counts qubits where the bra bitstring
//! has bit `s`, the word has `sigma_a` and the ket has bit `s'`; only the
//! eight combinations with nonzero `<s|sigma_a|s'>` matter. The element is
//!
//! ```text
//!   sum  i^(2 f_xx + 2 f_yy + 2 f_zz + 2 g_1z1 - g_0y1 + g_1y0)
//!        * lambda1! m! / (prod f! prod g!)
//!   / sqrt(C(m, q) C(m, q'))
//! ```
//!
//! over non-negative integers satisfying the bit-count and Pauli-count
//! constraints. Those constraints have rank seven, so five variables are
//! free: `f_xx, f_yy, f_zz, g_0x1, g_0z0`.

use num_bigint::BigUint;
use num_complex::Complex64;

use super::irrep::IrrepLabel;
use crate::algebra::MonomialIndex;
use crate::combinatorics::{Factorials, GaussianSum};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Exact numerator of an F element (before the binomial normalization).
pub(crate) fn f_numerator(
    fact: &Factorials,
    i: &MonomialIndex,
    irrep: &IrrepLabel,
    q: usize,
    qp: usize,
) -> GaussianSum {
    let l1 = irrep.lambda1;
    let m = irrep.free_qubits();
    let [i1, ix, iy, iz] = i.as_array();
    let mut acc = GaussianSum::new();

    for fxx in 0..=(ix / 2).min(l1) {
        for fyy in 0..=(iy / 2).min(l1 - fxx) {
            for fzz in 0..=(iz / 2).min(l1 - fxx - fyy) {
                let f11 = l1 - fxx - fyy - fzz;
                if 2 * f11 > i1 {
                    continue;
                }
                let s1 = i1 - 2 * f11;
                let sx = ix - 2 * fxx;
                let sy = iy - 2 * fyy;
                let sz = iz - 2 * fzz;
                for g0x1 in 0..=sx {
                    let g1x0 = sx - g0x1;
                    // g_0y1 - g_1y0 is fixed by the difference of the bit counts
                    let diff = qp as i64 - q as i64 - g0x1 as i64 + g1x0 as i64;
                    let twice = sy as i64 + diff;
                    if twice < 0 || twice % 2 != 0 || twice / 2 > sy as i64 {
                        continue;
                    }
                    let g0y1 = (twice / 2) as usize;
                    let g1y0 = sy - g0y1;
                    // remaining zeros / ones of the bra after the x, y flips
                    let Some(zeros) = (m - q).checked_sub(g0x1 + g0y1) else {
                        continue;
                    };
                    let Some(ones) = q.checked_sub(g1x0 + g1y0) else {
                        continue;
                    };
                    for g0z0 in 0..=zeros.min(sz) {
                        let g1z1 = sz - g0z0;
                        if g1z1 > ones {
                            continue;
                        }
                        let g010 = zeros - g0z0;
                        let g111 = ones - g1z1;
                        if g010 + g111 != s1 || g010 + g0z0 + g1x0 + g1y0 != m - qp {
                            continue;
                        }
                        let power = 2 * (fxx + fyy + fzz + g1z1) as i64 - g0y1 as i64 + g1y0 as i64;
                        let count = fact.ratio(
                            &[l1, m],
                            &[f11, fxx, fyy, fzz, g010, g111, g0x1, g1x0, g0y1, g1y0, g0z0, g1z1],
                        );
                        acc.add_phased(power, count);
                    }
                }
            }
        }
    }
    acc
}

fn normalization(fact: &Factorials, m: usize, q: usize, qp: usize) -> BigUint {
    fact.binomial(m, q) * fact.binomial(m, qp)
}

pub(crate) fn f_element_with(
    fact: &Factorials,
    i: &MonomialIndex,
    irrep: &IrrepLabel,
    q: usize,
    qp: usize,
) -> Complex64 {
    let num = f_numerator(fact, i, irrep, q, qp);
    if num.is_zero() {
        return Complex64::default();
    }
    num.div_sqrt(&normalization(fact, irrep.free_qubits(), q, qp))
}

fn check(i: &MonomialIndex, irrep: &IrrepLabel) -> Result<()> {
    if i.n() != irrep.n() {
        return Err(Error::SizeMismatch {
            expected: irrep.n(),
            found: i.n(),
        });
    }
    Ok(())
}

/// A single matrix element `F^{i,lambda}_{q,q'}`.
pub fn f_element(i: &MonomialIndex, irrep: &IrrepLabel, q: usize, qp: usize) -> Result<Complex64> {
    check(i, irrep)?;
    irrep.check_q(q)?;
    irrep.check_q(qp)?;
    let fact = Factorials::new(irrep.n());
    Ok(f_element_with(&fact, i, irrep, q, qp))
}

/// The matrix of `A_i` restricted to one irrep block.
#[derive(Clone, Debug, PartialEq)]
pub struct FBlock {
    pub monomial: MonomialIndex,
    pub irrep: IrrepLabel,
    pub matrix: CMatrix,
}

pub(crate) fn f_matrix_with(fact: &Factorials, i: &MonomialIndex, irrep: &IrrepLabel) -> CMatrix {
    let dim = irrep.q_dim();
    // A word with w = ix + iy flips changes the Hamming weight by at most w
    let reach = i.ix + i.iy;
    let mut out = CMatrix::zeros(dim, dim);
    for q in 0..dim {
        let lo = q.saturating_sub(reach);
        let hi = (q + reach).min(dim - 1);
        for qp in lo..=hi {
            out[(q, qp)] = f_element_with(fact, i, irrep, q, qp);
        }
    }
    out
}

/// All elements `F^{i,lambda}_{q,q'}` for one monomial and one irrep.
pub fn f_block(i: &MonomialIndex, irrep: &IrrepLabel) -> Result<FBlock> {
    check(i, irrep)?;
    let fact = Factorials::new(irrep.n());
    Ok(FBlock {
        monomial: *i,
        irrep: *irrep,
        matrix: f_matrix_with(&fact, i, irrep),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_monomials;
    use crate::linalg;
    use crate::schur::enumerate_irreps;

    fn m(a: usize, b: usize, c: usize, d: usize) -> MonomialIndex {
        MonomialIndex::new(a, b, c, d)
    }

    #[test]
    fn identity_monomial_gives_identity() {
        for n in 1..=7 {
            for irrep in enumerate_irreps(n).unwrap() {
                let block = f_block(&MonomialIndex::identity(n), &irrep).unwrap();
                let dim = irrep.q_dim();
                assert!(linalg::max_abs_diff(&block.matrix, &CMatrix::identity(dim, dim)) < 1e-14);
            }
        }
    }

    #[test]
    fn singlet_xx_is_minus_one() {
        let singlet = IrrepLabel::new(2, 1).unwrap();
        let v = f_element(&m(0, 2, 0, 0), &singlet, 0, 0).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        // 2 f_11 = 1 has no solution
        assert_eq!(f_element(&m(1, 1, 0, 0), &singlet, 0, 0).unwrap(), Complex64::default());
    }

    #[test]
    fn triplet_symmetrized_x() {
        let triplet = IrrepLabel::new(2, 0).unwrap();
        let block = f_block(&m(1, 1, 0, 0), &triplet).unwrap();
        let r2 = 2f64.sqrt();
        let want = [[0.0, r2, 0.0], [r2, 0.0, r2], [0.0, r2, 0.0]];
        for q in 0..3 {
            for qp in 0..3 {
                assert!((block.matrix[(q, qp)] - Complex64::new(want[q][qp], 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn blocks_are_hermitian() {
        for n in 1..=6 {
            for i in enumerate_monomials(n).unwrap() {
                for irrep in enumerate_irreps(n).unwrap() {
                    let b = f_block(&i, &irrep).unwrap();
                    assert!(linalg::hermitian_deviation(&b.matrix) < 1e-12, "{i} {irrep}");
                }
            }
        }
    }

    #[test]
    fn out_of_range_q() {
        let irrep = IrrepLabel::new(4, 1).unwrap();
        assert!(matches!(
            f_element(&m(4, 0, 0, 0), &irrep, 0, 3),
            Err(Error::QOutOfRange { q: 3, max: 2 })
        ));
        assert!(matches!(
            f_element(&m(3, 0, 0, 0), &irrep, 0, 0),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn band_shortcut_matches_full_evaluation() {
        let fact = Factorials::new(7);
        for i in enumerate_monomials(7).unwrap() {
            for irrep in enumerate_irreps(7).unwrap() {
                let banded = f_matrix_with(&fact, &i, &irrep);
                for q in 0..irrep.q_dim() {
                    for qp in 0..irrep.q_dim() {
                        let full = f_element_with(&fact, &i, &irrep, q, qp);
                        assert!((banded[(q, qp)] - full).norm() < 1e-13);
                    }
                }
            }
        }
    }
}
