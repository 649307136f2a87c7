//! Small dense Hermitian helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending
/// order. Only the lower triangle is trusted, so callers should symmetrize
/// first if the input carries rounding noise.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let dim = m.nrows();
    if dim == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(M + M^dagger) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `max |M - M^dagger|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..=r {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// `max |U U^dagger - I|`.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    let prod = u * u.adjoint();
    max_abs_diff(&prod, &CMatrix::identity(u.nrows(), u.ncols()))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `V f(D) V^dagger` for Hermitian `m = V D V^dagger`.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let (values, vectors) = eigh(&hermitian_part(m));
    let dim = values.len();
    let mut scaled = vectors.clone();
    for c in 0..dim {
        let w = f(values[c]);
        for r in 0..dim {
            scaled[(r, c)] *= w;
        }
    }
    scaled * vectors.adjoint()
}

/// `exp(-i t M)` for Hermitian `M`.
pub fn expm_hermitian(m: &CMatrix, t: f64) -> CMatrix {
    hermitian_function(m, |e| Complex64::from_polar(1.0, -e * t))
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let (vals, vecs) = eigh(&y);
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let recon = &vecs * CMatrix::from_diagonal(&CVector::from_vec(vec![c(-1., 0.), c(1., 0.)])) * vecs.adjoint();
        assert!(max_abs_diff(&recon, &y) < 1e-14);
    }

    #[test]
    fn exponential_of_pauli_x() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let t = 0.37;
        let u = expm_hermitian(&x, t);
        // exp(-i t X) = cos t I - i sin t X
        let want = CMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos(), 0.), c(0., -t.sin()), c(0., -t.sin()), c(t.cos(), 0.)],
        );
        assert!(max_abs_diff(&u, &want) < 1e-14);
        assert!(unitary_deviation(&u) < 1e-14);
    }
}
