//! Regular representation of an algebra element and the ground-state energy
//! read off its spectrum.

use nalgebra::DMatrix;

use super::monomial::{class_size_f64, enumerate_monomials, AlgebraElement, Coefficient, SymmetricOperator};
use super::structure::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Hermiticity deviation (after rescaling) above which the tensor is
/// considered broken.
pub const HERMITICITY_TOLERANCE: f64 = 1e-8;

/// Left-multiplication matrix `hat h^j_k = sum_i h_i X^{i,j}_k`, rows indexed
/// by `k` and columns by `j` in canonical order.
#[derive(Clone, Debug)]
pub struct RegularRepMatrix {
    n: usize,
    matrix: CMatrix,
}

impl RegularRepMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `D^{1/2} M D^{-1/2}` with `D = diag(class_size)`. The monomials are
    /// orthogonal with squared norms proportional to their class sizes, so
    /// this is Hermitian whenever the element is.
    pub fn rescaled(&self) -> Result<CMatrix> {
        let basis = enumerate_monomials(self.n)?;
        let roots: Vec<f64> = basis.iter().map(|m| class_size_f64(m).sqrt()).collect();
        let dim = basis.len();
        Ok(DMatrix::from_fn(dim, dim, |k, j| {
            self.matrix[(k, j)] * (roots[k] / roots[j])
        }))
    }

    /// Rescaled matrix symmetrized to exact Hermiticity, after checking the
    /// deviation against [`HERMITICITY_TOLERANCE`] (relative to the largest
    /// entry once that exceeds one).
    pub fn hermitian_form(&self) -> Result<CMatrix> {
        let s = self.rescaled()?;
        let scale = linalg::max_abs(&s).max(1.0);
        let deviation = linalg::hermitian_deviation(&s) / scale;
        if deviation > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOLERANCE,
            });
        }
        Ok(linalg::hermitian_part(&s))
    }

    /// All eigenvalues, ascending. Each eigenvalue of the irrep block for
    /// `lambda` appears `q_dim(lambda)` times.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(linalg::eigvalsh(&self.hermitian_form()?))
    }
}

/// Builds the regular representation of `h` from a tensor that covers every
/// `(i, j)` with `i` in the support of `h`.
pub fn regular_rep<T: Coefficient>(h: &AlgebraElement<T>, tensor: &StructureTensor) -> Result<RegularRepMatrix> {
    let n = h.n();
    if tensor.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: tensor.n(),
        });
    }
    let basis = enumerate_monomials(n)?;
    let dim = basis.len();
    let mut matrix = CMatrix::zeros(dim, dim);
    for (i, coeff) in h.terms() {
        let c = coeff.to_complex();
        for (col, j) in basis.iter().enumerate() {
            let products = tensor
                .get(i, j)
                .ok_or(Error::MissingTensorEntry { i: *i, j: *j })?;
            for (k, x) in products {
                matrix[(k.rank(), col)] += c * x;
            }
        }
    }
    Ok(RegularRepMatrix { n, matrix })
}

/// Regular representation with the needed tensor rows computed on the fly.
pub fn regular_rep_of<T: Coefficient>(h: &AlgebraElement<T>) -> Result<RegularRepMatrix> {
    let tensor = StructureTensor::for_rows(h.n(), &h.support())?;
    regular_rep(h, &tensor)
}

/// Ground-state energy of `sum_i h_i A_i` as the smallest eigenvalue of the
/// regular representation.
pub fn gse_regular(h: &SymmetricOperator) -> Result<f64> {
    let tensor = StructureTensor::for_rows(h.n(), &h.support())?;
    gse_regular_with(h, &tensor)
}

pub fn gse_regular_with(h: &SymmetricOperator, tensor: &StructureTensor) -> Result<f64> {
    let rep = regular_rep(h, tensor)?;
    let spectrum = rep.spectrum()?;
    Ok(spectrum.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialIndex;
    use num_complex::Complex64;

    #[test]
    fn identity_acts_as_scalar() {
        let h = SymmetricOperator::identity(3, 2.5).unwrap();
        let rep = regular_rep_of(&h).unwrap();
        let dim = rep.matrix().nrows();
        let want = CMatrix::identity(dim, dim) * Complex64::new(2.5, 0.0);
        assert!(linalg::max_abs_diff(rep.matrix(), &want) < 1e-14);
        assert!((gse_regular(&h).unwrap() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn column_of_symmetrized_x() {
        let i = MonomialIndex::new(1, 1, 0, 0);
        let h = SymmetricOperator::from_terms(2, [(i, 1.0)]).unwrap();
        let rep = regular_rep_of(&h).unwrap();
        let col = i.rank();
        for k in enumerate_monomials(2).unwrap() {
            let want = if k == MonomialIndex::new(2, 0, 0, 0) || k == MonomialIndex::new(0, 2, 0, 0) {
                2.0
            } else {
                0.0
            };
            assert!((rep.matrix()[(k.rank(), col)] - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn identity_column_is_coefficient_vector() {
        let h = SymmetricOperator::from_terms(
            3,
            [
                (MonomialIndex::new(1, 2, 0, 0), 0.7),
                (MonomialIndex::new(2, 0, 1, 0), -1.3),
                (MonomialIndex::new(0, 1, 1, 1), 0.4),
            ],
        )
        .unwrap();
        let rep = regular_rep_of(&h).unwrap();
        let id_col = MonomialIndex::identity(3).rank();
        for k in enumerate_monomials(3).unwrap() {
            let want = h.coefficient(&k);
            assert!((rep.matrix()[(k.rank(), id_col)] - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn two_qubit_heisenberg_singlet_energy() {
        let h = SymmetricOperator::heisenberg(2, 1.0).unwrap();
        assert!((gse_regular(&h).unwrap() + 3.0).abs() < 1e-10);
    }

    #[test]
    fn missing_rows_are_reported() {
        let h = SymmetricOperator::heisenberg(3, 1.0).unwrap();
        let tensor = StructureTensor::new(3).unwrap();
        assert!(matches!(regular_rep(&h, &tensor), Err(Error::MissingTensorEntry { .. })));
    }

    #[test]
    fn broken_tensor_fails_hermiticity() {
        let n = 2;
        let x = MonomialIndex::new(1, 1, 0, 0);
        let h = SymmetricOperator::from_terms(n, [(x, 1.0)]).unwrap();
        let mut tensor = StructureTensor::for_rows(n, &[x]).unwrap();
        tensor
            .insert(x, MonomialIndex::identity(n), MonomialIndex::new(0, 0, 0, 2), Complex64::new(3.0, 0.0))
            .unwrap();
        assert!(matches!(gse_regular_with(&h, &tensor), Err(Error::NotHermitian { .. })));
    }
}
