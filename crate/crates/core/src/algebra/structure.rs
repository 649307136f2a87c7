//! Structure constants `X^{i,j}_k` of the symmetrized Pauli algebra, defined
//! by `A_i A_j = sum_k X^{i,j}_k A_k`.
//!
//! For a product of a word from class `i` with a word from class `j`, let
//! `f_ab` count the qubits carrying `sigma_a` in the first word and `sigma_b`
//! in the second (`a, b` in `{1, x, y, z}`). Row sums of `f` are fixed by `i`,
//! column sums by `j`, and the class `k` of the product is determined by `f`
//! through the Pauli multiplication table. For a fixed word `p_k` the number
//! of contributing word pairs with a given `f` is
//!
//! ```text
//!   prod_c  k_c! / prod_{ab ~ c} f_ab!
//! ```
//!
//! and each carries the phase `i^(f_xy + f_yz + f_zx) (-i)^(f_yx + f_xz + f_zy)`.
//! The nine `f_ab` with `a, b` non-identity are enumerated freely; the other
//! seven follow from the row and column sums.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::monomial::{enumerate_monomials, MonomialIndex};
use crate::combinatorics::{Factorials, GaussianSum};
use crate::error::{Error, Result};

/// Letter encoding 0 = 1, 1 = x, 2 = y, 3 = z; the product of two Paulis is
/// proportional to the letter `a ^ b`.
const fn product_letter(a: usize, b: usize) -> usize {
    a ^ b
}

/// Power of `i` picked up by `sigma_a sigma_b`.
const fn product_phase(a: usize, b: usize) -> i64 {
    match (a, b) {
        (1, 2) | (2, 3) | (3, 1) => 1,
        (2, 1) | (3, 2) | (1, 3) => -1,
        _ => 0,
    }
}

/// Exact expansion of `A_i A_j`, optionally restricted to a single output
/// class.
pub(crate) fn product_exact(
    fact: &Factorials,
    i: &MonomialIndex,
    j: &MonomialIndex,
    only: Option<&MonomialIndex>,
) -> BTreeMap<MonomialIndex, GaussianSum> {
    let ia = i.as_array();
    let jb = j.as_array();
    let mut out: BTreeMap<MonomialIndex, GaussianSum> = BTreeMap::new();
    let mut f = [[0usize; 4]; 4];
    let mut row_left = [0, ia[1], ia[2], ia[3]];
    let mut col_left = [0, jb[1], jb[2], jb[3]];
    enumerate_inner(0, &mut f, &mut row_left, &mut col_left, &mut |f| {
        let mut f = *f;
        for a in 1..4 {
            f[a][0] = row_left_of(&f, &ia, a);
        }
        let mut col_sum = 0;
        for b in 1..4 {
            f[0][b] = jb[b] - (1..4).map(|a| f[a][b]).sum::<usize>();
            col_sum += f[0][b];
        }
        if col_sum > ia[0] {
            return;
        }
        f[0][0] = ia[0] - col_sum;
        let first_col: usize = (0..4).map(|a| f[a][0]).sum();
        if first_col != jb[0] {
            return;
        }

        let mut k = [0usize; 4];
        let mut power = 0i64;
        let mut cells = [0usize; 16];
        for a in 0..4 {
            for b in 0..4 {
                k[product_letter(a, b)] += f[a][b];
                power += product_phase(a, b) * f[a][b] as i64;
                cells[4 * a + b] = f[a][b];
            }
        }
        let k = MonomialIndex::from(k);
        if let Some(target) = only {
            if *target != k {
                return;
            }
        }
        let count = fact.ratio(&k.as_array(), &cells);
        out.entry(k).or_default().add_phased(power, count);
    });
    out.retain(|_, v| !v.is_zero());
    out
}

fn row_left_of(f: &[[usize; 4]; 4], ia: &[usize; 4], a: usize) -> usize {
    ia[a] - (1..4).map(|b| f[a][b]).sum::<usize>()
}

/// Visits every assignment of the 3x3 non-identity block of `f` that keeps
/// all row and column sums within their budgets.
fn enumerate_inner(
    cell: usize,
    f: &mut [[usize; 4]; 4],
    row_left: &mut [usize; 4],
    col_left: &mut [usize; 4],
    visit: &mut dyn FnMut(&[[usize; 4]; 4]),
) {
    if cell == 9 {
        visit(f);
        return;
    }
    let a = 1 + cell / 3;
    let b = 1 + cell % 3;
    let bound = row_left[a].min(col_left[b]);
    for v in 0..=bound {
        f[a][b] = v;
        row_left[a] -= v;
        col_left[b] -= v;
        enumerate_inner(cell + 1, f, row_left, col_left, visit);
        row_left[a] += v;
        col_left[b] += v;
    }
    f[a][b] = 0;
}

fn check_same_n(n: usize, others: &[&MonomialIndex]) -> Result<()> {
    for m in others {
        if m.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: m.n(),
            });
        }
    }
    Ok(())
}

/// The structure constant `X^{i,j}_k`.
pub fn structure_constant(i: &MonomialIndex, j: &MonomialIndex, k: &MonomialIndex) -> Result<Complex64> {
    let n = i.n();
    check_same_n(n, &[j, k])?;
    let fact = Factorials::new(n);
    Ok(product_exact(&fact, i, j, Some(k))
        .get(k)
        .map(|g| g.to_complex())
        .unwrap_or_default())
}

/// Nonzero `(k, X^{i,j}_k)` in canonical order of `k`.
pub fn structure_products(i: &MonomialIndex, j: &MonomialIndex) -> Result<Vec<(MonomialIndex, Complex64)>> {
    let n = i.n();
    check_same_n(n, &[j])?;
    let fact = Factorials::new(n);
    Ok(to_float(product_exact(&fact, i, j, None)))
}

fn to_float(exact: BTreeMap<MonomialIndex, GaussianSum>) -> Vec<(MonomialIndex, Complex64)> {
    exact.into_iter().map(|(k, g)| (k, g.to_complex())).collect()
}

/// Sparse structure tensor: for each computed `(i, j)` the nonzero `X^{i,j}_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor {
    n: usize,
    entries: BTreeMap<(MonomialIndex, MonomialIndex), Vec<(MonomialIndex, Complex64)>>,
}

impl StructureTensor {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystemSize(n));
        }
        Ok(Self {
            n,
            entries: BTreeMap::new(),
        })
    }

    /// Computes `X^{i,j}_k` for every `i` in `rows`, all `j` and all `k`.
    pub fn for_rows(n: usize, rows: &[MonomialIndex]) -> Result<Self> {
        let mut tensor = Self::new(n)?;
        let basis = enumerate_monomials(n)?;
        let fact = Factorials::new(n);
        for i in rows {
            i.validate(n)?;
            if tensor.entries.keys().any(|(a, _)| a == i) {
                continue;
            }
            let columns: Vec<_> = basis
                .par_iter()
                .map(|j| (*j, to_float(product_exact(&fact, i, j, None))))
                .collect();
            for (j, products) in columns {
                tensor.entries.insert((*i, j), products);
            }
        }
        Ok(tensor)
    }

    /// The full tensor. Only sensible for small `n`.
    pub fn full(n: usize) -> Result<Self> {
        Self::for_rows(n, &enumerate_monomials(n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: MonomialIndex, j: MonomialIndex, k: MonomialIndex, value: Complex64) -> Result<()> {
        check_same_n(self.n, &[&i, &j, &k])?;
        let list = self.entries.entry((i, j)).or_default();
        match list.binary_search_by(|(kk, _)| kk.cmp(&k)) {
            Ok(pos) => list[pos].1 = value,
            Err(pos) => list.insert(pos, (k, value)),
        }
        Ok(())
    }

    /// Registers `(i, j)` as computed, with no nonzero entries yet.
    pub fn ensure_pair(&mut self, i: MonomialIndex, j: MonomialIndex) -> Result<()> {
        check_same_n(self.n, &[&i, &j])?;
        self.entries.entry((i, j)).or_default();
        Ok(())
    }

    /// Adds every pair of `other`, overwriting pairs already present.
    pub fn merge(&mut self, other: StructureTensor) -> Result<()> {
        if other.n != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.entries.extend(other.entries);
        Ok(())
    }

    pub fn get(&self, i: &MonomialIndex, j: &MonomialIndex) -> Option<&[(MonomialIndex, Complex64)]> {
        self.entries.get(&(*i, *j)).map(Vec::as_slice)
    }

    pub fn value(&self, i: &MonomialIndex, j: &MonomialIndex, k: &MonomialIndex) -> Complex64 {
        self.get(i, j)
            .and_then(|list| list.iter().find(|(kk, _)| kk == k).map(|(_, v)| *v))
            .unwrap_or_default()
    }

    pub fn contains_row(&self, i: &MonomialIndex) -> bool {
        self.entries.keys().any(|(a, _)| a == i)
    }

    /// Flattened nonzero entries sorted by `(i, j, k)`.
    pub fn iter(&self) -> impl Iterator<Item = (MonomialIndex, MonomialIndex, MonomialIndex, Complex64)> + '_ {
        self.entries.iter().flat_map(|((i, j), list)| {
            list.iter()
                .filter(|(_, v)| *v != Complex64::default())
                .map(move |(k, v)| (*i, *j, *k, *v))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }
}
