use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Two-row Young diagram `(lambda0, lambda1)` with `lambda0 >= lambda1`,
/// labelling one block of the Schur decomposition of `n` qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    pub lambda0: usize,
    pub lambda1: usize,
}

impl IrrepLabel {
    /// The irrep of `n` qubits whose second row has length `lambda1`.
    pub fn new(n: usize, lambda1: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystemSize(n));
        }
        if 2 * lambda1 > n {
            return Err(Error::InvalidIrrep {
                lambda0: n.saturating_sub(lambda1),
                lambda1,
                n,
            });
        }
        Ok(Self {
            lambda0: n - lambda1,
            lambda1,
        })
    }

    pub fn from_rows(lambda0: usize, lambda1: usize) -> Result<Self> {
        if lambda0 < lambda1 || lambda0 + lambda1 == 0 {
            return Err(Error::InvalidIrrep {
                lambda0,
                lambda1,
                n: lambda0 + lambda1,
            });
        }
        Ok(Self { lambda0, lambda1 })
    }

    pub fn n(&self) -> usize {
        self.lambda0 + self.lambda1
    }

    /// Dimension of the `q` register, `n - 2 lambda1 + 1`.
    pub fn q_dim(&self) -> usize {
        self.lambda0 - self.lambda1 + 1
    }

    /// Size of the Dicke register, `n - 2 lambda1`.
    pub fn free_qubits(&self) -> usize {
        self.lambda0 - self.lambda1
    }

    /// Number of copies of this block in the full `2^n`-dimensional space,
    /// i.e. the dimension of the matching symmetric-group irrep:
    /// `C(n, lambda1) - C(n, lambda1 - 1)`.
    pub fn multiplicity(&self) -> BigUint {
        let n = self.n();
        let upper = binomial(n, self.lambda1);
        if self.lambda1 == 0 {
            upper
        } else {
            let lower = binomial(n, self.lambda1 - 1);
            if lower > upper {
                BigUint::zero()
            } else {
                upper - lower
            }
        }
    }

    pub fn check_q(&self, q: usize) -> Result<()> {
        if q > self.free_qubits() {
            return Err(Error::QOutOfRange {
                q,
                max: self.free_qubits(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lambda0, self.lambda1)
    }
}

/// All two-row irreps of `n` qubits by ascending `lambda1`.
pub fn enumerate_irreps(n: usize) -> Result<Vec<IrrepLabel>> {
    if n == 0 {
        return Err(Error::InvalidSystemSize(n));
    }
    (0..=n / 2).map(|l1| IrrepLabel::new(n, l1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial_count;
    use num_traits::One;

    #[test]
    fn four_qubits() {
        let irreps = enumerate_irreps(4).unwrap();
        let rows: Vec<_> = irreps.iter().map(|l| (l.lambda0, l.lambda1, l.q_dim())).collect();
        assert_eq!(rows, vec![(4, 0, 5), (3, 1, 3), (2, 2, 1)]);
    }

    #[test]
    fn two_qubits_triplet_and_singlet() {
        let dims: Vec<_> = enumerate_irreps(2).unwrap().iter().map(|l| l.q_dim()).collect();
        assert_eq!(dims, vec![3, 1]);
    }

    #[test]
    fn dimension_identity() {
        for n in 1..=30 {
            let total: usize = enumerate_irreps(n).unwrap().iter().map(|l| l.q_dim().pow(2)).sum();
            assert_eq!(total, monomial_count(n), "n = {n}");
        }
        let total: usize = enumerate_irreps(30).unwrap().iter().map(|l| l.q_dim().pow(2)).sum();
        assert_eq!(total, 5456);
    }

    #[test]
    fn multiplicities_fill_hilbert_space() {
        for n in 1..=20 {
            let total: BigUint = enumerate_irreps(n)
                .unwrap()
                .iter()
                .map(|l| l.multiplicity() * BigUint::from(l.q_dim()))
                .sum();
            assert_eq!(total, BigUint::one() << n);
        }
    }

    #[test]
    fn invalid_labels() {
        assert!(IrrepLabel::new(3, 2).is_err());
        assert!(IrrepLabel::from_rows(1, 2).is_err());
        assert!(enumerate_irreps(0).is_err());
        let l = IrrepLabel::new(4, 1).unwrap();
        assert!(l.check_q(2).is_ok());
        assert!(matches!(l.check_q(3), Err(Error::QOutOfRange { q: 3, max: 2 })));
    }
}
