use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::felement::f_matrix_with;
use super::irrep::{enumerate_irreps, IrrepLabel};
use crate::algebra::{AlgebraElement, Coefficient, MonomialIndex, SymmetricOperator};
use crate::combinatorics::Factorials;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Relative tolerance under which two block energies count as degenerate.
pub const DEFAULT_DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Block-diagonal operator on the Schur basis with one `q_dim x q_dim`
/// matrix per irrep (the multiplicity register is left implicit).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    n: usize,
    /// Indexed by `lambda1`.
    blocks: Vec<CMatrix>,
}

impl BlockOperator {
    /// Wraps per-irrep matrices ordered by ascending `lambda1`.
    pub fn from_blocks(n: usize, blocks: Vec<CMatrix>) -> Result<Self> {
        let irreps = enumerate_irreps(n)?;
        if blocks.len() != irreps.len() {
            return Err(Error::Format(format!(
                "expected {} blocks for n = {n}, found {}",
                irreps.len(),
                blocks.len()
            )));
        }
        for (irrep, b) in irreps.iter().zip(&blocks) {
            if b.nrows() != irrep.q_dim() || b.ncols() != irrep.q_dim() {
                return Err(Error::BlockShape {
                    lambda1: irrep.lambda1,
                    expected: irrep.q_dim(),
                    found: b.nrows().max(b.ncols()),
                });
            }
        }
        Ok(Self { n, blocks })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let blocks = enumerate_irreps(n)?
            .iter()
            .map(|l| CMatrix::identity(l.q_dim(), l.q_dim()))
            .collect();
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> Vec<IrrepLabel> {
        (0..self.blocks.len())
            .map(|l1| IrrepLabel {
                lambda0: self.n - l1,
                lambda1: l1,
            })
            .collect()
    }

    pub fn block(&self, irrep: &IrrepLabel) -> Option<&CMatrix> {
        if irrep.n() != self.n {
            return None;
        }
        self.blocks.get(irrep.lambda1)
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn iter(&self) -> impl Iterator<Item = (IrrepLabel, &CMatrix)> + '_ {
        self.irreps().into_iter().zip(self.blocks.iter())
    }

    pub fn map(&self, f: impl Fn(&CMatrix) -> CMatrix + Sync + Send) -> Self {
        Self {
            n: self.n,
            blocks: self.blocks.par_iter().map(f).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map(|b| b.adjoint())
    }

    /// Block-wise product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        Ok(Self {
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Largest `max |B B^dagger - I|` over blocks, with the offending `lambda1`.
    pub fn unitary_deviation(&self) -> (usize, f64) {
        self.blocks
            .iter()
            .enumerate()
            .map(|(l1, b)| (l1, linalg::unitary_deviation(b)))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::hermitian_deviation)
            .fold(0.0, f64::max)
    }

    pub(crate) fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

/// `hat c^lambda = sum_i c_i F^{i,lambda}` for every irrep.
pub fn block_operator<T: Coefficient>(coeffs: &AlgebraElement<T>) -> Result<BlockOperator> {
    let n = coeffs.n();
    let irreps = enumerate_irreps(n)?;
    let fact = Factorials::new(n);
    let terms: Vec<_> = coeffs.terms().map(|(i, c)| (*i, c.to_complex())).collect();
    let blocks = irreps
        .par_iter()
        .map(|irrep| {
            let dim = irrep.q_dim();
            let mut acc = CMatrix::zeros(dim, dim);
            for (i, c) in &terms {
                acc += f_matrix_with(&fact, i, irrep) * *c;
            }
            acc
        })
        .collect();
    Ok(BlockOperator { n, blocks })
}

/// Precomputed F blocks keyed by `(monomial, lambda1)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FTensor {
    n: usize,
    blocks: BTreeMap<(MonomialIndex, usize), CMatrix>,
}

impl FTensor {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystemSize(n));
        }
        Ok(Self {
            n,
            blocks: BTreeMap::new(),
        })
    }

    /// F blocks of every monomial in `monomials` on every irrep.
    pub fn for_monomials(n: usize, monomials: &[MonomialIndex]) -> Result<Self> {
        let mut out = Self::new(n)?;
        let irreps = enumerate_irreps(n)?;
        let fact = Factorials::new(n);
        for i in monomials {
            i.validate(n)?;
        }
        let computed: Vec<_> = monomials
            .par_iter()
            .flat_map_iter(|i| {
                let fact = &fact;
                irreps
                    .iter()
                    .map(move |l| ((*i, l.lambda1), f_matrix_with(fact, i, l)))
            })
            .collect();
        out.blocks.extend(computed);
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: MonomialIndex, irrep: IrrepLabel, matrix: CMatrix) -> Result<()> {
        i.validate(self.n)?;
        if irrep.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: irrep.n(),
            });
        }
        if matrix.nrows() != irrep.q_dim() || matrix.ncols() != irrep.q_dim() {
            return Err(Error::BlockShape {
                lambda1: irrep.lambda1,
                expected: irrep.q_dim(),
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        self.blocks.insert((i, irrep.lambda1), matrix);
        Ok(())
    }

    pub fn get(&self, i: &MonomialIndex, lambda1: usize) -> Option<&CMatrix> {
        self.blocks.get(&(*i, lambda1))
    }

    /// Blocks sorted by monomial, then `lambda1`.
    pub fn iter(&self) -> impl Iterator<Item = (MonomialIndex, usize, &CMatrix)> + '_ {
        self.blocks.iter().map(|((i, l), m)| (*i, *l, m))
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Like [`block_operator`] but reads the F blocks from `tensor`.
pub fn block_operator_with<T: Coefficient>(coeffs: &AlgebraElement<T>, tensor: &FTensor) -> Result<BlockOperator> {
    let n = coeffs.n();
    if tensor.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: tensor.n(),
        });
    }
    let irreps = enumerate_irreps(n)?;
    let mut blocks = Vec::with_capacity(irreps.len());
    for irrep in &irreps {
        let dim = irrep.q_dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (i, c) in coeffs.terms() {
            let f = tensor.get(i, irrep.lambda1).ok_or(Error::MissingFBlock {
                i: *i,
                lambda1: irrep.lambda1,
            })?;
            acc += f * c.to_complex();
        }
        blocks.push(acc);
    }
    Ok(BlockOperator { n, blocks })
}

/// Ground state in the Schur basis at the canonical multiplicity slot.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundStateResult {
    pub energy: f64,
    pub lambda_min: IrrepLabel,
    /// Unit vector over the `q` register of `lambda_min`; the first
    /// non-negligible amplitude is real and positive.
    pub amplitudes: Vec<Complex64>,
    /// Every irrep whose lowest block energy lies within tolerance of `energy`.
    pub degenerate_irreps: Vec<IrrepLabel>,
}

/// Ground state of `h` with the default degeneracy tolerance.
pub fn ground_state(h: &SymmetricOperator) -> Result<GroundStateResult> {
    ground_state_with(h, DEFAULT_DEGENERACY_TOLERANCE)
}

pub fn ground_state_with(h: &SymmetricOperator, tolerance: f64) -> Result<GroundStateResult> {
    ground_state_of_blocks(&block_operator(h)?, tolerance)
}

/// Minimizes over irrep blocks. Ties within `tolerance * max(1, |E|)` go to
/// the smallest `lambda1`.
pub fn ground_state_of_blocks(blocks: &BlockOperator, tolerance: f64) -> Result<GroundStateResult> {
    let per_block: Vec<(f64, Vec<Complex64>)> = blocks
        .blocks
        .par_iter()
        .map(|b| {
            let (values, vectors) = linalg::eigh(&linalg::hermitian_part(b));
            (values[0], vectors.column(0).iter().copied().collect())
        })
        .collect();

    let energy = per_block
        .iter()
        .map(|(e, _)| *e)
        .fold(f64::INFINITY, f64::min);
    let window = tolerance * energy.abs().max(1.0);
    let irreps = blocks.irreps();
    let degenerate: Vec<IrrepLabel> = irreps
        .iter()
        .zip(&per_block)
        .filter(|(_, (e, _))| (e - energy).abs() <= window)
        .map(|(l, _)| *l)
        .collect();
    let lambda_min = degenerate[0];
    let mut amplitudes = per_block[lambda_min.lambda1].1.clone();
    fix_phase(&mut amplitudes);
    Ok(GroundStateResult {
        energy,
        lambda_min,
        amplitudes,
        degenerate_irreps: degenerate,
    })
}

/// Normalizes and rotates the global phase so that the first amplitude with
/// modulus above `1e-10` is real positive.
fn fix_phase(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    for z in v.iter_mut() {
        *z /= norm;
    }
    let Some(p) = v.iter().position(|z| z.norm() > 1e-10) else {
        return;
    };
    let rot = v[p].conj() / v[p].norm();
    for z in v.iter_mut() {
        *z *= rot;
    }
    // the rotated pivot can keep a rounding-level imaginary part
    v[p] = Complex64::new(v[p].norm(), 0.0);
}
