//! Pauli words on `n` qubits as `(x_mask, z_mask)` pairs. Qubit 0 is the most
//! significant bit of a basis index.

use num_complex::Complex64;

use crate::algebra::MonomialIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PauliWord {
    pub x_mask: usize,
    pub z_mask: usize,
}

impl PauliWord {
    pub fn y_count(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    /// Letter counts `(i1, ix, iy, iz)` on `n` qubits.
    pub fn class(&self, n: usize) -> MonomialIndex {
        let x = (self.x_mask & !self.z_mask).count_ones() as usize;
        let y = self.y_count() as usize;
        let z = (self.z_mask & !self.x_mask).count_ones() as usize;
        MonomialIndex::new(n - x - y - z, x, y, z)
    }

    /// `P|b> = phase(b) |b ^ x_mask>`.
    pub fn phase(&self, b: usize) -> Complex64 {
        let sign = if (b & self.z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        i_power(self.y_count()) * sign
    }
}

pub fn i_power(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Every Pauli word in the symmetrization class of `i`.
pub fn class_words(i: &MonomialIndex) -> Vec<PauliWord> {
    let n = i.n();
    let mut out = Vec::new();
    let mut left = i.as_array();
    fill(0, n, &mut left, 0, 0, &mut out);
    out
}

fn fill(pos: usize, n: usize, left: &mut [usize; 4], x: usize, z: usize, out: &mut Vec<PauliWord>) {
    if pos == n {
        out.push(PauliWord { x_mask: x, z_mask: z });
        return;
    }
    let bit = 1usize << (n - 1 - pos);
    // letters 1, X, Y, Z as (x, z) bits
    const LETTERS: [(bool, bool); 4] = [(false, false), (true, false), (true, true), (false, true)];
    for (letter, &(lx, lz)) in LETTERS.iter().enumerate() {
        if left[letter] == 0 {
            continue;
        }
        left[letter] -= 1;
        fill(
            pos + 1,
            n,
            left,
            if lx { x | bit } else { x },
            if lz { z | bit } else { z },
            out,
        );
        left[letter] += 1;
    }
}
