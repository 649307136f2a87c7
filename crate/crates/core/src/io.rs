//! JSON documents for structure tensors, F tensors, block matrices and ground
//! states.
//!
//! Floats are written by `serde_json` in shortest round-trip form, so reading
//! a document back reproduces every value bit for bit.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_monomials, MonomialIndex, StructureTensor};
use crate::dynamics::BlockState;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::schur::{BlockOperator, FTensor, GroundStateResult, IrrepLabel};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<&ComplexValue> for Complex64 {
    fn from(z: &ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TensorEntry {
    pub i: MonomialIndex,
    pub j: MonomialIndex,
    pub k: MonomialIndex,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TensorDocument {
    pub n: usize,
    pub entries: Vec<TensorEntry>,
}

impl TensorDocument {
    pub fn from_tensor(tensor: &StructureTensor) -> Self {
        let entries = tensor
            .iter()
            .filter(|(_, _, _, v)| *v != Complex64::default())
            .map(|(i, j, k, v)| TensorEntry { i, j, k, re: v.re, im: v.im })
            .collect();
        Self { n: tensor.n(), entries }
    }

    /// Zeros are omitted from dumps, so every row that appears is taken to
    /// be complete.
    pub fn to_tensor(&self) -> Result<StructureTensor> {
        let mut tensor = StructureTensor::new(self.n)?;
        let basis = enumerate_monomials(self.n)?;
        let rows: BTreeSet<MonomialIndex> = self.entries.iter().map(|e| e.i).collect();
        for i in rows {
            for j in &basis {
                tensor.ensure_pair(i, *j)?;
            }
        }
        for e in &self.entries {
            tensor.insert(e.i, e.j, e.k, Complex64::new(e.re, e.im))?;
        }
        Ok(tensor)
    }
}

/// One square matrix split into real and imaginary row arrays.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SplitMatrix {
    pub matrix_re: Vec<Vec<f64>>,
    pub matrix_im: Vec<Vec<f64>>,
}

impl SplitMatrix {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| f(&m[(r, c)])).collect()).collect()
        };
        Self {
            matrix_re: rows(|z| z.re),
            matrix_im: rows(|z| z.im),
        }
    }

    /// Rebuilds the matrix, checking it is `dim x dim`.
    pub fn to_matrix(&self, lambda1: usize, dim: usize) -> Result<CMatrix> {
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == dim && rows.iter().all(|r| r.len() == dim);
        if !shape_ok(&self.matrix_re) || !shape_ok(&self.matrix_im) {
            let found = self.matrix_re.len();
            return Err(Error::BlockShape {
                lambda1,
                expected: dim,
                found,
            });
        }
        Ok(CMatrix::from_fn(dim, dim, |r, c| {
            Complex64::new(self.matrix_re[r][c], self.matrix_im[r][c])
        }))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FBlockEntry {
    pub i: MonomialIndex,
    pub lambda1: usize,
    #[serde(flatten)]
    pub matrix: SplitMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FTensorDocument {
    pub n: usize,
    pub blocks: Vec<FBlockEntry>,
}

impl FTensorDocument {
    pub fn from_tensor(tensor: &FTensor) -> Self {
        let blocks = tensor
            .iter()
            .map(|(i, lambda1, m)| FBlockEntry {
                i,
                lambda1,
                matrix: SplitMatrix::from_matrix(m),
            })
            .collect();
        Self { n: tensor.n(), blocks }
    }

    pub fn to_tensor(&self) -> Result<FTensor> {
        let mut tensor = FTensor::new(self.n)?;
        for b in &self.blocks {
            let irrep = IrrepLabel::new(self.n, b.lambda1)?;
            tensor.insert(b.i, irrep, b.matrix.to_matrix(b.lambda1, irrep.q_dim())?)?;
        }
        Ok(tensor)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlockEntry {
    pub lambda1: usize,
    #[serde(flatten)]
    pub matrix: SplitMatrix,
}

/// Shared layout of block states and block operators.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlocksDocument {
    pub n: usize,
    pub blocks: Vec<BlockEntry>,
}

impl BlocksDocument {
    pub fn from_blocks(n: usize, blocks: &[CMatrix]) -> Self {
        Self {
            n,
            blocks: blocks
                .iter()
                .enumerate()
                .map(|(lambda1, m)| BlockEntry {
                    lambda1,
                    matrix: SplitMatrix::from_matrix(m),
                })
                .collect(),
        }
    }

    /// Blocks in ascending `lambda1`. Every irrep must appear exactly once.
    pub fn to_blocks(&self) -> Result<Vec<CMatrix>> {
        let count = self.n / 2 + 1;
        let mut out: Vec<Option<CMatrix>> = vec![None; count];
        for b in &self.blocks {
            let irrep = IrrepLabel::new(self.n, b.lambda1)?;
            if out[b.lambda1].is_some() {
                return Err(Error::Format(format!("duplicate block for lambda1 = {}", b.lambda1)));
            }
            out[b.lambda1] = Some(b.matrix.to_matrix(b.lambda1, irrep.q_dim())?);
        }
        out.into_iter()
            .enumerate()
            .map(|(l, m)| m.ok_or_else(|| Error::Format(format!("missing block for lambda1 = {l}"))))
            .collect()
    }

    pub fn from_state(state: &BlockState) -> Self {
        Self::from_blocks(state.n(), state.blocks())
    }

    pub fn from_operator(op: &BlockOperator) -> Self {
        Self::from_blocks(op.n(), op.blocks())
    }

    pub fn to_state(&self) -> Result<BlockState> {
        BlockState::new(self.n, self.to_blocks()?)
    }

    pub fn to_operator(&self) -> Result<BlockOperator> {
        BlockOperator::from_blocks(self.n, self.to_blocks()?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroundStateDocument {
    pub energy: f64,
    pub lambda1: usize,
    pub amplitudes: Vec<ComplexValue>,
    pub degenerate_lambda1: Vec<usize>,
}

impl From<&GroundStateResult> for GroundStateDocument {
    fn from(g: &GroundStateResult) -> Self {
        Self {
            energy: g.energy,
            lambda1: g.lambda_min.lambda1,
            amplitudes: g.amplitudes.iter().map(|z| ComplexValue::from(*z)).collect(),
            degenerate_lambda1: g.degenerate_irreps.iter().map(|l| l.lambda1).collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
