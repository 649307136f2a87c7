//! Exact integer combinatorics.
//!
//! Factorials, binomials and multinomials are kept as big integers and only
//! converted to `f64` once a whole constrained sum has been accumulated.

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

/// Table of `0!, 1!, ..., max!`.
#[derive(Clone, Debug)]
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(BigUint::one());
        for k in 1..=max {
            let next = &table[k - 1] * BigUint::from(k);
            table.push(next);
        }
        Self { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.table[k]
    }

    /// `(sum parts)! / prod(parts!)`.
    pub fn multinomial(&self, parts: &[usize]) -> BigUint {
        let total: usize = parts.iter().sum();
        self.ratio(&[total], parts)
    }

    /// `prod(numer!) / prod(denom!)`. The caller guarantees divisibility.
    pub fn ratio(&self, numer: &[usize], denom: &[usize]) -> BigUint {
        let mut num = BigUint::one();
        for &k in numer {
            if k > 1 {
                num *= &self.table[k];
            }
        }
        let mut den = BigUint::one();
        for &k in denom {
            if k > 1 {
                den *= &self.table[k];
            }
        }
        if den.is_one() {
            num
        } else {
            num / den
        }
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.ratio(&[n], &[k, n - k])
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= BigUint::from(n - t);
        acc /= BigUint::from(t + 1);
    }
    acc
}

pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0usize;
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    acc
}

/// Exact accumulator for sums `sum_t i^{e_t} c_t` with non-negative integer
/// `c_t`, i.e. a Gaussian integer.
#[derive(Clone, Debug, Default)]
pub struct GaussianSum {
    re: BigInt,
    im: BigInt,
}

impl GaussianSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `i^power * value`.
    pub fn add_phased(&mut self, power: i64, value: BigUint) {
        let value = BigInt::from_biguint(Sign::Plus, value);
        match power.rem_euclid(4) {
            0 => self.re += value,
            1 => self.im += value,
            2 => self.re -= value,
            _ => self.im -= value,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn re(&self) -> &BigInt {
        &self.re
    }

    pub fn im(&self) -> &BigInt {
        &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// `self / sqrt(denominator)`, without overflowing `f64` in intermediate
    /// steps.
    pub fn div_sqrt(&self, denominator: &BigUint) -> Complex64 {
        Complex64::new(
            div_sqrt(&self.re, denominator),
            div_sqrt(&self.im, denominator),
        )
    }
}

/// Splits `x` into `(m, e)` with `x ~= m * 2^e`, `m` carrying the leading
/// 64 bits.
fn split(x: &BigUint) -> (f64, i64) {
    let bits = x.bits() as i64;
    if bits <= 64 {
        return (x.to_f64().unwrap_or(0.0), 0);
    }
    let shift = bits - 64;
    let top = x >> (shift as usize);
    (top.to_f64().unwrap_or(0.0), shift)
}

fn div_sqrt(num: &BigInt, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let (mn, en) = split(num.magnitude());
    let (mut md, mut ed) = split(den);
    if ed % 2 != 0 {
        md *= 2.0;
        ed -= 1;
    }
    let exp = en - ed / 2;
    sign * (mn / md.sqrt()) * 2f64.powi(exp as i32)
}
