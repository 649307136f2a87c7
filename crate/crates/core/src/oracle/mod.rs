//! Brute-force reference implementation on the full `2^n`-dimensional space.
//!
//! Everything here is exponential in `n` and exists to cross-check the
//! polynomial-time paths at small sizes.

mod pauli;
mod permutation;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::algebra::{class_size_f64, enumerate_monomials, AlgebraElement, Coefficient, MonomialIndex, SymmetricOperator};
use crate::combinatorics::binomial;
use crate::dynamics::BlockState;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::schur::IrrepLabel;

pub use pauli::{class_words, PauliWord};
pub use permutation::{for_each_permutation, index_map, next_permutation, permute_index};

pub const DEFAULT_DENSE_CAP: usize = 12;
pub const DEFAULT_GROUP_CAP: usize = 7;

/// Dense `2^n x 2^n` operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(n: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Format(format!(
                "dense operator on {n} qubits must be {dim}x{dim}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn apply(&self, state: &DenseState) -> DenseState {
        DenseState {
            n: self.n,
            vector: &self.matrix * &state.vector,
        }
    }
}

/// Dense state vector of length `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    vector: CVector,
}

impl DenseState {
    pub fn new(n: usize, vector: CVector) -> Result<Self> {
        if vector.len() != 1 << n {
            return Err(Error::Format(format!(
                "state on {n} qubits must have length {}, got {}",
                1usize << n,
                vector.len()
            )));
        }
        Ok(Self { n, vector })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn norm(&self) -> f64 {
        self.vector.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.vector.dotc(&other.vector)
    }

    /// `Re<a|b> / (|a| |b|)`.
    pub fn cosine_similarity(&self, other: &DenseState) -> f64 {
        self.inner(other).re / (self.norm() * other.norm())
    }

    /// Computational basis state `|x>`.
    pub fn basis(n: usize, x: usize) -> Self {
        let mut vector = CVector::zeros(1 << n);
        vector[x] = Complex64::new(1.0, 0.0);
        Self { n, vector }
    }
}

/// Expansion of a dense operator in the symmetrized Pauli basis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub coefficients: BTreeMap<MonomialIndex, Complex64>,
    /// `|M - sum_i c_i A_i|_F`; zero iff `M` is permutation invariant.
    pub residual: f64,
}

impl Decomposition {
    pub fn coefficient(&self, i: &MonomialIndex) -> Complex64 {
        self.coefficients.get(i).copied().unwrap_or_default()
    }
}

/// Dense reference computations with size caps: `dense_cap` bounds anything
/// that materializes `2^n x 2^n` matrices, `group_cap` anything summing over
/// all of `S_n`.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub dense_cap: usize,
    pub group_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            dense_cap: DEFAULT_DENSE_CAP,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

impl Oracle {
    fn check_dense(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidSystemSize(n));
        }
        if n > self.dense_cap {
            return Err(Error::OverCap {
                n,
                cap: self.dense_cap,
                what: "dense operators",
            });
        }
        Ok(())
    }

    fn check_group(&self, n: usize) -> Result<()> {
        self.check_dense(n)?;
        if n > self.group_cap {
            return Err(Error::OverCap {
                n,
                cap: self.group_cap,
                what: "symmetric-group sums",
            });
        }
        Ok(())
    }

    /// `A_i` as the sum of every Pauli word in its class.
    pub fn dense_monomial(&self, i: &MonomialIndex) -> Result<DenseOperator> {
        let n = i.n();
        self.check_dense(n)?;
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for word in class_words(i) {
            for b in 0..dim {
                m[(b ^ word.x_mask, b)] += word.phase(b);
            }
        }
        DenseOperator::new(n, m)
    }

    /// `sum_i c_i A_i` as a dense matrix.
    pub fn dense_operator<T: Coefficient>(&self, h: &AlgebraElement<T>) -> Result<DenseOperator> {
        let n = h.n();
        self.check_dense(n)?;
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for (i, c) in h.terms() {
            let c = c.to_complex();
            for word in class_words(i) {
                for b in 0..dim {
                    m[(b ^ word.x_mask, b)] += c * word.phase(b);
                }
            }
        }
        DenseOperator::new(n, m)
    }

    /// Group average `(1/n!) sum_pi R(pi) M R(pi)^dagger`.
    pub fn reynolds_twirl(&self, m: &DenseOperator) -> Result<DenseOperator> {
        let n = m.n();
        self.check_group(n)?;
        let dim = m.dim();
        let mut out = CMatrix::zeros(dim, dim);
        let mut count = 0usize;
        for_each_permutation(n, |pi| {
            let map = index_map(pi);
            for y in 0..dim {
                for x in 0..dim {
                    out[(map[x], map[y])] += m.matrix[(x, y)];
                }
            }
            count += 1;
        });
        out /= Complex64::new(count as f64, 0.0);
        DenseOperator::new(n, out)
    }

    /// `max_pi |R(pi) M R(pi)^dagger - M|_F`.
    pub fn invariance_defect(&self, m: &DenseOperator) -> Result<f64> {
        let n = m.n();
        self.check_group(n)?;
        let dim = m.dim();
        let mut worst = 0.0f64;
        for_each_permutation(n, |pi| {
            let map = index_map(pi);
            let mut acc = 0.0;
            for y in 0..dim {
                for x in 0..dim {
                    acc += (m.matrix[(map[x], map[y])] - m.matrix[(x, y)]).norm_sqr();
                }
            }
            worst = worst.max(acc.sqrt());
        });
        Ok(worst)
    }

    /// Coefficients `c_i = tr(A_i^dagger M) / (class_size(i) 2^n)` and the
    /// Frobenius norm of what is left over.
    pub fn decompose_invariant(&self, m: &DenseOperator) -> Result<Decomposition> {
        let n = m.n();
        self.check_dense(n)?;
        let dim = m.dim();
        let scale = 1.0 / dim as f64;
        // Pauli coefficient m_P = tr(P M) / 2^n
        let pauli_coeff = |word: PauliWord| -> Complex64 {
            let mut acc = Complex64::default();
            for c in 0..dim {
                acc += word.phase(c) * m.matrix[(c, c ^ word.x_mask)];
            }
            acc * scale
        };

        let mut sums: BTreeMap<MonomialIndex, Complex64> = BTreeMap::new();
        for x_mask in 0..dim {
            for z_mask in 0..dim {
                let word = PauliWord { x_mask, z_mask };
                *sums.entry(word.class(n)).or_default() += pauli_coeff(word);
            }
        }
        let coefficients: BTreeMap<MonomialIndex, Complex64> = enumerate_monomials(n)?
            .into_iter()
            .map(|i| {
                let c = sums.get(&i).copied().unwrap_or_default() / class_size_f64(&i);
                (i, c)
            })
            .collect();

        let mut residual_sq = 0.0;
        for x_mask in 0..dim {
            for z_mask in 0..dim {
                let word = PauliWord { x_mask, z_mask };
                residual_sq += (pauli_coeff(word) - coefficients[&word.class(n)]).norm_sqr();
            }
        }
        Ok(Decomposition {
            coefficients,
            residual: (residual_sq * dim as f64).sqrt(),
        })
    }

    /// `|Psi>^{lambda1} (x) |Dicke(n - 2 lambda1, q)>`, singlet pairs on the
    /// leading qubits.
    pub fn dense_schur_state(&self, irrep: &IrrepLabel, q: usize) -> Result<DenseState> {
        let n = irrep.n();
        self.check_dense(n)?;
        irrep.check_q(q)?;
        let pairs = irrep.lambda1;
        let m = irrep.free_qubits();
        let dicke_norm = binomial(m, q).to_f64().unwrap_or(f64::INFINITY).sqrt();
        let pair_norm = 2f64.powf(pairs as f64 / 2.0);
        let mut v = CVector::zeros(1 << n);
        for flips in 0..1usize << pairs {
            // pair l is |01> if bit l of `flips` is clear, else -|10>
            let mut prefix = 0usize;
            for l in 0..pairs {
                let bits = if (flips >> l) & 1 == 0 { 0b01 } else { 0b10 };
                prefix |= bits << (2 * (pairs - 1 - l));
            }
            let sign = if flips.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            for tail in 0..1usize << m {
                if tail.count_ones() as usize == q {
                    v[(prefix << m) | tail] = Complex64::new(sign / (pair_norm * dicke_norm), 0.0);
                }
            }
        }
        DenseState::new(n, v)
    }

    /// `|x_q> = |01>^{lambda1} (x) |0>^{n - 2 lambda1 - q} (x) |1>^q`.
    pub fn seed_state(&self, irrep: &IrrepLabel, q: usize) -> Result<DenseState> {
        let n = irrep.n();
        self.check_dense(n)?;
        irrep.check_q(q)?;
        let m = irrep.free_qubits();
        let mut x = 0usize;
        for _ in 0..irrep.lambda1 {
            x = (x << 2) | 0b01;
        }
        x = (x << m) | ((1 << q) - 1);
        Ok(DenseState::basis(n, x))
    }

    /// Young symmetrizer `(dim / n!) (sum_col sgn(c) P(c)) (sum_row P(r))` for
    /// the tableau filled column by column: rows are `{0, 2, .., 2 lambda1 - 2,
    /// 2 lambda1, .., n - 1}` and `{1, 3, .., 2 lambda1 - 1}`, columns are the
    /// pairs `(2l, 2l + 1)` plus singletons.
    pub fn young_symmetrizer(&self, irrep: &IrrepLabel) -> Result<DenseOperator> {
        let n = irrep.n();
        self.check_group(n)?;
        let pairs = irrep.lambda1;
        let mut first_row: Vec<usize> = (0..pairs).map(|l| 2 * l).collect();
        first_row.extend(2 * pairs..n);
        let second_row: Vec<usize> = (0..pairs).map(|l| 2 * l + 1).collect();

        // full qubit permutations for every element of the row group
        let mut row_maps: Vec<Vec<usize>> = Vec::new();
        for_each_permutation(first_row.len(), |p0| {
            for_each_permutation(second_row.len(), |p1| {
                let mut pi: Vec<usize> = (0..n).collect();
                for (a, &b) in p0.iter().enumerate() {
                    pi[first_row[a]] = first_row[b];
                }
                for (a, &b) in p1.iter().enumerate() {
                    pi[second_row[a]] = second_row[b];
                }
                row_maps.push(index_map(&pi));
            });
        });
        let col_maps: Vec<(f64, Vec<usize>)> = (0..1usize << pairs)
            .map(|swaps| {
                let mut pi: Vec<usize> = (0..n).collect();
                for l in 0..pairs {
                    if (swaps >> l) & 1 == 1 {
                        pi.swap(2 * l, 2 * l + 1);
                    }
                }
                let sign = if swaps.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                (sign, index_map(&pi))
            })
            .collect();

        let dim = 1usize << n;
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        let prefactor = irrep.multiplicity().to_f64().unwrap_or(f64::NAN) / factorial;
        let mut out = CMatrix::zeros(dim, dim);
        let mut row_image = vec![0.0f64; dim];
        for x in 0..dim {
            row_image.iter_mut().for_each(|v| *v = 0.0);
            for map in &row_maps {
                row_image[map[x]] += 1.0;
            }
            for (y, &w) in row_image.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                for (sign, map) in &col_maps {
                    out[(map[y], x)] += Complex64::new(prefactor * sign * w, 0.0);
                }
            }
        }
        DenseOperator::new(n, out)
    }

    /// `sum_q a_q |lambda, q>`.
    pub fn embed_amplitudes(&self, irrep: &IrrepLabel, amplitudes: &[Complex64]) -> Result<DenseState> {
        let n = irrep.n();
        self.check_dense(n)?;
        if amplitudes.len() != irrep.q_dim() {
            return Err(Error::BlockShape {
                lambda1: irrep.lambda1,
                expected: irrep.q_dim(),
                found: amplitudes.len(),
            });
        }
        let mut v = CVector::zeros(1 << n);
        for (q, a) in amplitudes.iter().enumerate() {
            v += self.dense_schur_state(irrep, q)?.vector * *a;
        }
        DenseState::new(n, v)
    }

    /// `sum_lambda sum_{q,q'} rho_lambda[q,q'] |lambda,q><lambda,q'|`, placing
    /// every block in the canonical multiplicity slot.
    pub fn embed_block_state(&self, rho: &BlockState) -> Result<DenseOperator> {
        let n = rho.n();
        self.check_dense(n)?;
        let dim = 1usize << n;
        let mut out = CMatrix::zeros(dim, dim);
        for (l1, block) in rho.blocks().iter().enumerate() {
            let irrep = IrrepLabel::new(n, l1)?;
            let states = (0..irrep.q_dim())
                .map(|q| self.dense_schur_state(&irrep, q).map(|s| s.vector))
                .collect::<Result<Vec<_>>>()?;
            for (q, ket) in states.iter().enumerate() {
                for (qp, bra) in states.iter().enumerate() {
                    let w = block[(q, qp)];
                    if w != Complex64::default() {
                        out += ket * bra.adjoint() * w;
                    }
                }
            }
        }
        DenseOperator::new(n, out)
    }

    /// Smallest eigenvalue of the dense assembly of `h`.
    pub fn exact_gse(&self, h: &SymmetricOperator) -> Result<f64> {
        let dense = self.dense_operator(h)?;
        Ok(linalg::eigvalsh(&linalg::hermitian_part(&dense.matrix))[0])
    }

    /// Full dense spectrum of `h`, ascending.
    pub fn exact_spectrum(&self, h: &SymmetricOperator) -> Result<Vec<f64>> {
        let dense = self.dense_operator(h)?;
        Ok(linalg::eigvalsh(&linalg::hermitian_part(&dense.matrix)))
    }

    /// `tr(O e^{-iHt} rho e^{iHt})`.
    pub fn exact_expectation(
        &self,
        o: &SymmetricOperator,
        h: &SymmetricOperator,
        t: f64,
        rho: &DenseOperator,
    ) -> Result<f64> {
        let o = self.dense_operator(o)?;
        let h = self.dense_operator(h)?;
        if rho.n() != h.n() {
            return Err(Error::SizeMismatch {
                expected: h.n(),
                found: rho.n(),
            });
        }
        let u = linalg::expm_hermitian(&h.matrix, t);
        let evolved = &u * &rho.matrix * u.adjoint();
        Ok(linalg::trace(&(o.matrix * evolved)).re)
    }
}
