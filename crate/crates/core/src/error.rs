use thiserror::Error;

use crate::algebra::MonomialIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system size n = {0}; need n >= 1")]
    InvalidSystemSize(usize),

    #[error("monomial {index} has components summing to {sum}, expected n = {n}")]
    MonomialSum {
        index: MonomialIndex,
        sum: usize,
        n: usize,
    },

    #[error("system size mismatch: expected n = {expected}, found n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid irrep (lambda0 = {lambda0}, lambda1 = {lambda1}) for n = {n}")]
    InvalidIrrep {
        lambda0: usize,
        lambda1: usize,
        n: usize,
    },

    #[error("q index {q} out of range 0..={max}")]
    QOutOfRange { q: usize, max: usize },

    #[error("structure tensor has no entry for (i, j) = ({i}, {j})")]
    MissingTensorEntry { i: MonomialIndex, j: MonomialIndex },

    #[error("F tensor has no block for monomial {i} on irrep lambda1 = {lambda1}")]
    MissingFBlock { i: MonomialIndex, lambda1: usize },

    #[error("matrix is not Hermitian: deviation {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error(
        "operator is not unitary on irrep lambda1 = {lambda1}: deviation {deviation:e} exceeds {tolerance:e}"
    )]
    NotUnitary {
        lambda1: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("expectation value has imaginary residue {residue:e} above {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("invalid block state: {0}")]
    InvalidState(String),

    #[error("sample label {0} is not -1 or +1")]
    InvalidLabel(i64),

    #[error("empty sample list")]
    EmptyDataset,

    #[error("n = {n} exceeds the oracle cap {cap} for {what}")]
    OverCap {
        n: usize,
        cap: usize,
        what: &'static str,
    },

    #[error("block lambda1 = {lambda1} has dimension {found}, expected {expected}")]
    BlockShape {
        lambda1: usize,
        expected: usize,
        found: usize,
    },

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors raised by a failed numerical tolerance check rather than by
    /// malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. } | Error::NotUnitary { .. } | Error::ImaginaryResidue { .. }
        )
    }
}
