//! Smith normal form over the integers and the order of
//! `H^1(Z_2^(n-1), Z^n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::group::GhwPresentation;
use crate::Result;

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * factor;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += factor * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * factor;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -core::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | .. | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SnfResult {
    /// Product of the nonzero invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.diagonal.iter().product()
    }
}

/// Smallest nonzero absolute value in the trailing submatrix, ties by
/// row-major position.
fn find_pivot(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if m.get(br, bc).abs() <= x.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < d.rows.min(d.cols) {
        let Some((pr, pc)) = find_pivot(&d, t) else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..d.rows {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = -d.get(r, t).div_floor(d.get(t, t));
                d.add_row(r, t, &q);
                u.add_row(r, t, &q);
                dirty |= !d.get(r, t).is_zero();
            }
            for c in t + 1..d.cols {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = -d.get(t, c).div_floor(d.get(t, t));
                d.add_col(c, t, &q);
                v.add_col(c, t, &q);
                dirty |= !d.get(t, c).is_zero();
            }
            if !dirty {
                // Row and column are clear; enforce divisibility of the rest.
                let pivot = d.get(t, t).clone();
                let offender = (t + 1..d.rows).find(|&r| (t + 1..d.cols).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
                match offender {
                    Some(r) => {
                        d.add_row(t, r, &BigInt::one());
                        u.add_row(t, r, &BigInt::one());
                    }
                    None => break,
                }
            }
            // Bring the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for r in t + 1..d.rows {
                let x = d.get(r, t);
                if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                    best = (r, t);
                }
            }
            for c in t + 1..d.cols {
                let x = d.get(t, c);
                if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                    best = (t, c);
                }
            }
            d.swap_rows(t, best.0);
            u.swap_rows(t, best.0);
            d.swap_cols(t, best.1);
            v.swap_cols(t, best.1);
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        diagonal.push(d.get(t, t).clone());
        t += 1;
    }
    SnfResult { rank: diagonal.len(), diagonal, u, v, d }
}

/// Order of `H^1(H, Z^n) = Z^1 / B^1` computed by Smith normal form.
///
/// A crossed homomorphism is fixed by its values `v_k` on the stored
/// generators, subject to `(1 + g_k) v_k = 0` and
/// `v_k + g_k v_l = v_l + g_l v_k`. Since `Z^1` is saturated and contains
/// `B^1 = {((g_k - 1) a)_k}`, the quotient is finite exactly when both have the
/// same rank, and then its order is the product of the invariant factors of
/// the boundary matrix.
pub fn h1_order(p: &GhwPresentation) -> Result<u64> {
    let n = p.dim();
    let gens = p.gens();
    let k = gens.len();
    let vars = n * k;
    let var = |g: usize, i: usize| g * n + i;
    let sign = |g: usize, i: usize| -> i64 {
        if gens[g].sign.is_flipped(i) {
            -1
        } else {
            1
        }
    };

    let mut relations: Vec<Vec<i64>> = Vec::new();
    for g in 0..k {
        for i in 0..n {
            let mut row = vec![0i64; vars];
            row[var(g, i)] = 1 + sign(g, i);
            relations.push(row);
        }
    }
    for g in 0..k {
        for h in g + 1..k {
            for i in 0..n {
                let mut row = vec![0i64; vars];
                row[var(g, i)] = 1 - sign(h, i);
                row[var(h, i)] = sign(g, i) - 1;
                relations.push(row);
            }
        }
    }
    let relation_rank = smith_normal_form(&IntegerMatrix::from_rows(&relations)).rank;

    let mut boundary = IntegerMatrix::zeros(vars, n);
    for i in 0..n {
        for g in 0..k {
            boundary.set(var(g, i), i, BigInt::from(sign(g, i) - 1));
        }
    }
    let snf = smith_normal_form(&boundary);
    if snf.rank != vars - relation_rank {
        return Err(Error::InfiniteH1);
    }
    snf.torsion_order().to_u64().ok_or(Error::InfiniteH1)
}

/// `2^(number of nontrivial coordinate characters)`: each nontrivial
/// character contributes `H^1(H, Z_chi) = Z_2`, the trivial one nothing.
pub fn h1_closed_form(p: &GhwPresentation) -> u64 {
    let nontrivial = (0..p.dim()).filter(|&i| !p.is_trivial_character(i)).count();
    1u64 << nontrivial
}
