use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics;
use crate::error::{Error, Result};

/// Label `(i1, ix, iy, iz)` of a symmetrized Pauli monomial: the sum of all
/// distinct Pauli words with `i1` identities, `ix` X's, `iy` Y's and `iz` Z's.
///
/// The derived ordering is lexicographic on the tuple and is the canonical
/// basis order used for every matrix and file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 4]", into = "[usize; 4]")]
pub struct MonomialIndex {
    pub i1: usize,
    pub ix: usize,
    pub iy: usize,
    pub iz: usize,
}

impl MonomialIndex {
    pub const fn new(i1: usize, ix: usize, iy: usize, iz: usize) -> Self {
        Self { i1, ix, iy, iz }
    }

    pub const fn identity(n: usize) -> Self {
        Self::new(n, 0, 0, 0)
    }

    /// Total number of qubits the monomial acts on.
    pub fn n(&self) -> usize {
        self.i1 + self.ix + self.iy + self.iz
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.ix + self.iy + self.iz
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.i1, self.ix, self.iy, self.iz]
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Checks the sum-to-`n` constraint.
    pub fn validate(&self, n: usize) -> Result<()> {
        let sum = self.n();
        if sum != n {
            return Err(Error::MonomialSum {
                index: *self,
                sum,
                n,
            });
        }
        Ok(())
    }

    /// Position in the canonical order among all monomials with the same `n`.
    pub fn rank(&self) -> usize {
        let n = self.n();
        // tuples whose first entry is smaller
        let mut r: usize = (0..self.i1).map(|a| tri(n - a)).sum();
        let m = n - self.i1;
        r += (0..self.ix).map(|b| m - b + 1).sum::<usize>();
        r + self.iy
    }
}

/// Number of `(ix, iy, iz)` triples summing to `m`.
fn tri(m: usize) -> usize {
    (m + 1) * (m + 2) / 2
}

impl From<[usize; 4]> for MonomialIndex {
    fn from(a: [usize; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<MonomialIndex> for [usize; 4] {
    fn from(m: MonomialIndex) -> Self {
        m.as_array()
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i1, self.ix, self.iy, self.iz)
    }
}

/// All monomial labels for `n` qubits in canonical order. There are
/// `C(n+3, 3)` of them.
pub fn enumerate_monomials(n: usize) -> Result<Vec<MonomialIndex>> {
    if n == 0 {
        return Err(Error::InvalidSystemSize(n));
    }
    let mut out = Vec::with_capacity(monomial_count(n));
    for i1 in 0..=n {
        for ix in 0..=(n - i1) {
            for iy in 0..=(n - i1 - ix) {
                out.push(MonomialIndex::new(i1, ix, iy, n - i1 - ix - iy));
            }
        }
    }
    Ok(out)
}

/// `C(n+3, 3)`.
pub fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Number of distinct Pauli words in the class of `i`, the multinomial
/// `n! / (i1! ix! iy! iz!)`.
pub fn class_size(i: &MonomialIndex) -> BigUint {
    combinatorics::multinomial(&i.as_array())
}

/// `class_size` as a float.
pub fn class_size_f64(i: &MonomialIndex) -> f64 {
    class_size(i).to_f64().unwrap_or(f64::INFINITY)
}

/// Scalars usable as algebra coefficients.
pub trait Coefficient:
    Copy + fmt::Debug + PartialEq + Zero + Add<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn to_complex(self) -> Complex64;
}

impl Coefficient for f64 {
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Coefficient for Complex64 {
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Sparse element `sum_i c_i A_i` of the invariant algebra on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T> {
    n: usize,
    terms: BTreeMap<MonomialIndex, T>,
}

/// Hermitian operator: real coefficients on the (Hermitian) monomials.
pub type SymmetricOperator = AlgebraElement<f64>;

/// Complex coefficient vector, e.g. for a unitary `U = sum_i u_i A_i`.
pub type ComplexElement = AlgebraElement<Complex64>;

impl<T: Coefficient> AlgebraElement<T> {
    /// The zero operator.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystemSize(n));
        }
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MonomialIndex, T)>) -> Result<Self> {
        let mut out = Self::new(n)?;
        for (i, c) in terms {
            out.add_term(i, c)?;
        }
        Ok(out)
    }

    /// `c * A_identity`.
    pub fn identity(n: usize, c: T) -> Result<Self> {
        Self::from_terms(n, [(MonomialIndex::identity(n), c)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c` to the coefficient of `i`. Repeated monomials accumulate.
    pub fn add_term(&mut self, i: MonomialIndex, c: T) -> Result<()> {
        i.validate(self.n)?;
        let slot = self.terms.entry(i).or_insert_with(T::zero);
        *slot = *slot + c;
        Ok(())
    }

    pub fn with_term(mut self, i: MonomialIndex, c: T) -> Result<Self> {
        self.add_term(i, c)?;
        Ok(self)
    }

    pub fn coefficient(&self, i: &MonomialIndex) -> T {
        self.terms.get(i).copied().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &T)> + '_ {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn support(&self) -> Vec<MonomialIndex> {
        self.terms().map(|(i, _)| *i).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn scaled(&self, alpha: T) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(i, c)| (*i, *c * alpha)).collect(),
        }
    }

    pub fn to_complex(&self) -> ComplexElement {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(i, c)| (*i, c.to_complex())).collect(),
        }
    }
}

impl SymmetricOperator {
    /// All-to-all Heisenberg coupling `sum_{a<b} (X_a X_b + Y_a Y_b + Z_a Z_b)`
    /// scaled by `j`.
    pub fn heisenberg(n: usize, j: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSystemSize(n));
        }
        Self::from_terms(
            n,
            [
                (MonomialIndex::new(n - 2, 2, 0, 0), j),
                (MonomialIndex::new(n - 2, 0, 2, 0), j),
                (MonomialIndex::new(n - 2, 0, 0, 2), j),
            ],
        )
    }
}
