//! Equivariant dynamics on block-diagonal states.
//!
//! States, unitaries and observables all live on the Schur blocks, so an
//! expectation value `tr(O U rho U^dagger)` reduces to a sum of small matrix
//! products, one per irrep, accumulated in ascending `lambda1` order.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{ComplexElement, SymmetricOperator};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::schur::{block_operator, enumerate_irreps, BlockOperator, IrrepLabel};

/// Tolerance for accepting coefficient-built unitaries.
pub const UNITARITY_TOLERANCE: f64 = 1e-8;
/// Tolerance on the trace, Hermiticity and positivity of block states.
pub const STATE_TOLERANCE: f64 = 1e-9;
/// Largest imaginary residue tolerated in an expectation value.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// Density operator in block form: one PSD matrix per irrep over the `q`
/// register, with the multiplicity register traced out.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockState {
    n: usize,
    blocks: Vec<CMatrix>,
}

impl BlockState {
    /// Validates Hermiticity, positivity and unit total trace.
    pub fn new(n: usize, blocks: Vec<CMatrix>) -> Result<Self> {
        let op = BlockOperator::from_blocks(n, blocks)?;
        let state = Self {
            n,
            blocks: op.blocks().to_vec(),
        };
        state.validate()?;
        Ok(state)
    }

    /// Pure state `|psi><psi|` supported on a single irrep. `amplitudes` is
    /// normalized here.
    pub fn pure(irrep: IrrepLabel, amplitudes: &[Complex64]) -> Result<Self> {
        if amplitudes.len() != irrep.q_dim() {
            return Err(Error::BlockShape {
                lambda1: irrep.lambda1,
                expected: irrep.q_dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero amplitude vector".into()));
        }
        let psi = linalg::CVector::from_iterator(amplitudes.len(), amplitudes.iter().map(|z| z / norm));
        let n = irrep.n();
        let blocks = enumerate_irreps(n)?
            .iter()
            .map(|l| {
                if l.lambda1 == irrep.lambda1 {
                    &psi * psi.adjoint()
                } else {
                    CMatrix::zeros(l.q_dim(), l.q_dim())
                }
            })
            .collect();
        Self::new(n, blocks)
    }

    /// `|lambda, q><lambda, q|`.
    pub fn basis(irrep: IrrepLabel, q: usize) -> Result<Self> {
        irrep.check_q(q)?;
        let mut amps = vec![Complex64::default(); irrep.q_dim()];
        amps[q] = Complex64::new(1.0, 0.0);
        Self::pure(irrep, &amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, irrep: &IrrepLabel) -> Option<&CMatrix> {
        if irrep.n() != self.n {
            return None;
        }
        self.blocks.get(irrep.lambda1)
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| linalg::trace(b).re).sum()
    }

    /// Smallest eigenvalue over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .filter(|b| b.nrows() > 0)
            .map(|b| linalg::eigvalsh(&linalg::hermitian_part(b))[0])
            .fold(f64::INFINITY, f64::min)
    }

    fn validate(&self) -> Result<()> {
        for (l1, b) in self.blocks.iter().enumerate() {
            let dev = linalg::hermitian_deviation(b);
            if dev > STATE_TOLERANCE {
                return Err(Error::InvalidState(format!(
                    "block lambda1 = {l1} is not Hermitian (deviation {dev:e})"
                )));
            }
        }
        let min = self.min_eigenvalue();
        if min < -STATE_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        Ok(())
    }

    /// `U rho U^dagger` block by block.
    pub fn evolved(&self, u: &BlockOperator) -> Result<Self> {
        check_n(self.n, u.n())?;
        let blocks = self
            .blocks
            .par_iter()
            .zip(u.blocks().par_iter())
            .map(|(rho, u)| u * rho * u.adjoint())
            .collect();
        Ok(Self { n: self.n, blocks })
    }
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// `exp(-i hat h^lambda t)` on every block.
pub fn evolution_from_hamiltonian(h: &SymmetricOperator, t: f64) -> Result<BlockOperator> {
    Ok(evolution_from_blocks(&block_operator(h)?, t))
}

/// Same as [`evolution_from_hamiltonian`] for an already assembled block
/// Hamiltonian.
pub fn evolution_from_blocks(h: &BlockOperator, t: f64) -> BlockOperator {
    h.map(|b| linalg::expm_hermitian(b, t))
}

/// `U = sum_i u_i A_i` in block form, rejected unless every block is unitary
/// to [`UNITARITY_TOLERANCE`].
pub fn unitary_from_coeffs(u: &ComplexElement) -> Result<BlockOperator> {
    let blocks = block_operator(u)?;
    let (lambda1, deviation) = blocks.unitary_deviation();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NotUnitary {
            lambda1,
            deviation,
            tolerance: UNITARITY_TOLERANCE,
        });
    }
    Ok(blocks)
}

/// `tr(O U rho U^dagger) = sum_lambda tr(U^dagger O U rho)` from block data.
pub fn expectation_blocks(o: &BlockOperator, u: &BlockOperator, rho: &BlockState) -> Result<f64> {
    o.same_n(u)?;
    check_n(o.n(), rho.n())?;
    let parts: Vec<Complex64> = o
        .blocks()
        .par_iter()
        .zip(u.blocks().par_iter())
        .zip(rho.blocks().par_iter())
        .map(|((o, u), rho)| {
            let m = u.adjoint() * o * u;
            // tr(M rho) without forming the product
            let mut acc = Complex64::default();
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    acc += m[(r, c)] * rho[(c, r)];
                }
            }
            acc
        })
        .collect();
    let total: Complex64 = parts.iter().sum();
    let tolerance = IMAGINARY_TOLERANCE * total.re.abs().max(1.0);
    if total.im.abs() > tolerance {
        return Err(Error::ImaginaryResidue {
            residue: total.im.abs(),
            tolerance,
        });
    }
    Ok(total.re)
}

/// Expectation of the observable `sum_i o_i A_i` after applying `u` to `rho`.
pub fn expectation(o: &SymmetricOperator, u: &BlockOperator, rho: &BlockState) -> Result<f64> {
    expectation_blocks(&block_operator(o)?, u, rho)
}

/// A block state with a binary class label.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSample {
    pub state: BlockState,
    label: i8,
}

impl LabeledSample {
    pub fn new(state: BlockState, label: i64) -> Result<Self> {
        match label {
            -1 | 1 => Ok(Self {
                state,
                label: label as i8,
            }),
            other => Err(Error::InvalidLabel(other)),
        }
    }

    pub fn label(&self) -> i8 {
        self.label
    }
}

/// `-(1/M) sum_i y_i tr(O U rho_i U^dagger)`.
pub fn empirical_loss(samples: &[LabeledSample], o: &SymmetricOperator, u: &BlockOperator) -> Result<f64> {
    Ok(empirical_loss_terms(samples, &block_operator(o)?, u)?.0)
}

/// Loss together with the per-sample expectation values.
pub fn empirical_loss_terms(
    samples: &[LabeledSample],
    o: &BlockOperator,
    u: &BlockOperator,
) -> Result<(f64, Vec<f64>)> {
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let values = samples
        .iter()
        .map(|s| expectation_blocks(o, u, &s.state))
        .collect::<Result<Vec<_>>>()?;
    let weighted: f64 = samples
        .iter()
        .zip(&values)
        .map(|(s, v)| s.label as f64 * v)
        .sum();
    Ok((-weighted / samples.len() as f64, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialIndex;
    use std::f64::consts::PI;

    fn singlet_state() -> BlockState {
        BlockState::basis(IrrepLabel::new(2, 1).unwrap(), 0).unwrap()
    }

    fn xx() -> SymmetricOperator {
        SymmetricOperator::from_terms(2, [(MonomialIndex::new(0, 2, 0, 0), 1.0)]).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let h = SymmetricOperator::heisenberg(4, 0.7).unwrap();
        let u = evolution_from_hamiltonian(&h, 0.0).unwrap();
        let id = BlockOperator::identity(4).unwrap();
        for (a, b) in u.blocks().iter().zip(id.blocks()) {
            assert!(linalg::max_abs_diff(a, b) < 1e-14);
        }
    }

    #[test]
    fn identity_hamiltonian_is_global_phase() {
        let c = 1.3;
        let t = 0.4;
        let u = evolution_from_hamiltonian(&SymmetricOperator::identity(3, c).unwrap(), t).unwrap();
        let phase = Complex64::from_polar(1.0, -c * t);
        for b in u.blocks() {
            let dim = b.nrows();
            assert!(linalg::max_abs_diff(b, &(CMatrix::identity(dim, dim) * phase)) < 1e-14);
        }
    }

    #[test]
    fn two_qubit_heisenberg_quarter_period() {
        let u = evolution_from_hamiltonian(&SymmetricOperator::heisenberg(2, 1.0).unwrap(), PI / 4.0).unwrap();
        let singlet = u.blocks()[1][(0, 0)];
        assert!((singlet - Complex64::from_polar(1.0, 3.0 * PI / 4.0)).norm() < 1e-14);
        let triplet = &u.blocks()[0];
        let want = CMatrix::identity(3, 3) * Complex64::from_polar(1.0, -PI / 4.0);
        assert!(linalg::max_abs_diff(triplet, &want) < 1e-14);
    }

    #[test]
    fn coefficient_unitaries() {
        let id = ComplexElement::identity(3, Complex64::new(1.0, 0.0)).unwrap();
        let u = unitary_from_coeffs(&id).unwrap();
        assert_eq!(u.unitary_deviation().1, 0.0);

        let twice = ComplexElement::identity(3, Complex64::new(2.0, 0.0)).unwrap();
        assert!(matches!(unitary_from_coeffs(&twice), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn singlet_xx_expectation() {
        let u = BlockOperator::identity(2).unwrap();
        let v = expectation(&xx(), &u, &singlet_state()).unwrap();
        assert!((v + 1.0).abs() < 1e-14);
    }

    #[test]
    fn energy_is_conserved() {
        let h = SymmetricOperator::from_terms(
            4,
            [
                (MonomialIndex::new(2, 2, 0, 0), 0.5),
                (MonomialIndex::new(3, 0, 0, 1), -1.0),
                (MonomialIndex::new(3, 1, 0, 0), 0.8),
            ],
        )
        .unwrap();
        let hb = block_operator(&h).unwrap();
        let rho = BlockState::pure(
            IrrepLabel::new(4, 0).unwrap(),
            &[1.0, 0.5, 0.0, -0.3, 0.2].map(|x| Complex64::new(x, 0.1 * x)),
        )
        .unwrap();
        let e0 = expectation_blocks(&hb, &BlockOperator::identity(4).unwrap(), &rho).unwrap();
        for k in 0..10 {
            let u = evolution_from_blocks(&hb, 0.3 * k as f64);
            let e = expectation_blocks(&hb, &u, &rho).unwrap();
            assert!((e - e0).abs() < 1e-12);
        }
    }

    #[test]
    fn loss_examples() {
        let u = BlockOperator::identity(2).unwrap();
        let o = xx();
        let single = vec![LabeledSample::new(singlet_state(), 1).unwrap()];
        assert!((empirical_loss(&single, &o, &u).unwrap() - 1.0).abs() < 1e-14);

        let pair = vec![
            LabeledSample::new(singlet_state(), 1).unwrap(),
            LabeledSample::new(singlet_state(), -1).unwrap(),
        ];
        assert!(empirical_loss(&pair, &o, &u).unwrap().abs() < 1e-14);

        assert!(matches!(empirical_loss(&[], &o, &u), Err(Error::EmptyDataset)));
        assert!(matches!(LabeledSample::new(singlet_state(), 0), Err(Error::InvalidLabel(0))));
    }

    #[test]
    fn state_validation() {
        let bad_trace = vec![CMatrix::identity(3, 3), CMatrix::zeros(1, 1)];
        assert!(matches!(BlockState::new(2, bad_trace), Err(Error::InvalidState(_))));
        let negative = vec![
            CMatrix::from_diagonal_element(3, 3, Complex64::new(0.5, 0.0)),
            CMatrix::from_element(1, 1, Complex64::new(-0.5, 0.0)),
        ];
        assert!(matches!(BlockState::new(2, negative), Err(Error::InvalidState(_))));
    }
}
