//! Linear algebra over `F_2` on `u64` bitmasks, plus coordinate permutations.
//!
//! Bit `i` of a mask is coordinate `i + 1` in the usual 1-based notation.

use alloc::vec;
use alloc::vec::Vec;

/// All-ones mask on `n` coordinates.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Parity of the number of set bits.
#[inline]
pub fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// Evaluates the functional `m` at `g`: `sum_i m_i g_i mod 2`.
#[inline]
pub fn pairing(m: u64, g: u64) -> bool {
    parity(m & g)
}

/// Moves bit `i` of `x` to bit `perm[i]`.
pub fn permute_bits(x: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << perm[i];
    }
    out
}

/// Inverse of a permutation given as an image table.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Iterates over the set bits of a mask, lowest first.
pub fn bit_indices(x: u64) -> impl Iterator<Item = usize> {
    let mut rest = x;
    core::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// All `2^k` combinations of `gens`; index bit `j` selects `gens[j]`.
pub fn span(gens: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; 1 << gens.len()];
    for idx in 1..out.len() {
        let low = idx.trailing_zeros() as usize;
        out[idx] = out[idx & (idx - 1)] ^ gens[low];
    }
    out
}

/// Reduced row echelon form of a list of vectors, keeping track of how each
/// echelon row is combined from the inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Echelon rows, each with a distinct pivot bit not present in the others.
    pub rows: Vec<u64>,
    /// Pivot bit of each row.
    pub pivots: Vec<usize>,
    /// `combos[r]` has bit `j` set when input `j` takes part in row `r`.
    pub combos: Vec<u64>,
}

impl Echelon {
    pub fn new(vectors: &[u64]) -> Self {
        let mut rows: Vec<u64> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut combos: Vec<u64> = Vec::new();
        for (j, &v) in vectors.iter().enumerate() {
            let mut v = v;
            let mut c = 1u64 << j;
            for r in 0..rows.len() {
                if v >> pivots[r] & 1 == 1 {
                    v ^= rows[r];
                    c ^= combos[r];
                }
            }
            if v == 0 {
                continue;
            }
            let p = v.trailing_zeros() as usize;
            for r in 0..rows.len() {
                if rows[r] >> p & 1 == 1 {
                    rows[r] ^= v;
                    combos[r] ^= c;
                }
            }
            rows.push(v);
            pivots.push(p);
            combos.push(c);
        }
        Echelon { rows, pivots, combos }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon rows; zero iff `v` is in the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v >> p & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

pub fn rank(vectors: &[u64]) -> usize {
    Echelon::new(vectors).rank()
}

pub fn is_independent(vectors: &[u64]) -> bool {
    rank(vectors) == vectors.len()
}

/// Functionals `d_j` with `pairing(d_j, gens[l]) == (j == l)`.
///
/// Returns `None` when the vectors are dependent.
pub fn dual_basis(gens: &[u64]) -> Option<Vec<u64>> {
    let ech = Echelon::new(gens);
    if ech.rank() != gens.len() {
        return None;
    }
    // Echelon row r = sum_j T[r][j] gens[j] with T given by combos, and
    // e_{pivot(a)} pairs to delta with row a. Then d_j = sum_a T[a][j] e_{pivot(a)}.
    let mut duals = vec![0u64; gens.len()];
    for (a, &combo) in ech.combos.iter().enumerate() {
        for j in bit_indices(combo) {
            duals[j] |= 1 << ech.pivots[a];
        }
    }
    Some(duals)
}

/// Nonzero vectors orthogonal to every input vector, as a basis of the
/// annihilator inside `F_2^n`.
pub fn annihilator(vectors: &[u64], n: usize) -> Vec<u64> {
    let ech = Echelon::new(vectors);
    let pivot_mask = ech.pivots.iter().fold(0u64, |m, &p| m | 1 << p);
    let free = full_mask(n) & !pivot_mask;
    bit_indices(free)
        .map(|f| {
            let mut v = 1u64 << f;
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

/// Lexicographic successor of a permutation; `false` once the last one is passed.
pub fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// All permutations `perm` of `0..n` with `perm(block) = 0..|block|`, i.e. the
/// coordinates in `block` are sent, in every possible order, to the leading
/// positions and the remaining coordinates to the trailing ones.
pub fn block_permutations(block: u64, n: usize) -> Vec<Vec<usize>> {
    let inside: Vec<usize> = bit_indices(block).collect();
    let outside: Vec<usize> = bit_indices(full_mask(n) & !block).collect();
    let k = inside.len();
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        let mut b: Vec<usize> = (k..n).collect();
        loop {
            let mut perm = vec![0; n];
            for (idx, &c) in inside.iter().enumerate() {
                perm[c] = a[idx];
            }
            for (idx, &c) in outside.iter().enumerate() {
                perm[c] = b[idx];
            }
            out.push(perm);
            if !next_permutation(&mut b) {
                break;
            }
        }
        if !next_permutation(&mut a) {
            break;
        }
    }
    out
}
