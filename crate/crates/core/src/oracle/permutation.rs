//! Qubit permutations acting on basis indices, applied without forming
//! `2^n x 2^n` permutation matrices.

/// Advances `p` to the next permutation in lexicographic order; returns
/// `false` after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `visit` with every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        visit(&p);
        if !next_permutation(&mut p) {
            break;
        }
    }
}

/// Index of `R(pi)|x>`: qubit `l` of `x` moves to position `pi[l]`.
pub fn permute_index(x: usize, pi: &[usize]) -> usize {
    let n = pi.len();
    let mut out = 0;
    for (l, &target) in pi.iter().enumerate() {
        if (x >> (n - 1 - l)) & 1 == 1 {
            out |= 1 << (n - 1 - target);
        }
    }
    out
}

/// `x -> R(pi) x` for every basis index.
pub fn index_map(pi: &[usize]) -> Vec<usize> {
    (0..1usize << pi.len()).map(|x| permute_index(x, pi)).collect()
}
