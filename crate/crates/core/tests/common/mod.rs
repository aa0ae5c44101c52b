#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use ghw_core::cohomology::smith_normal_form;
use ghw_core::enumerate::transform;
use ghw_core::{
    enumerate_census, Census, DiagonalGroup, EnumerationOptions, Generator, GhwPresentation, IntegerMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn census(n: usize) -> &'static Census {
    static CACHE: [OnceLock<Census>; 6] = [const { OnceLock::new() }; 6];
    CACHE[n].get_or_init(|| enumerate_census(n, &EnumerationOptions::default()).unwrap())
}

pub const DIDICOSM: &str = "dim=3; gens=+--:HH0,-+-:0HH";

/// An affine map `x -> diag(signs) x + t` with exact rational translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub signs: Vec<i64>,
    pub t: Vec<Rational64>,
}

impl Affine {
    pub fn identity(n: usize) -> Self {
        Affine { signs: vec![1; n], t: vec![Rational64::from_integer(0); n] }
    }

    pub fn from_masks(n: usize, flips: u64, halves: u64) -> Self {
        Affine {
            signs: (0..n).map(|i| if flips >> i & 1 == 1 { -1 } else { 1 }).collect(),
            t: (0..n)
                .map(|i| if halves >> i & 1 == 1 { Rational64::new(1, 2) } else { Rational64::from_integer(0) })
                .collect(),
        }
    }

    /// `self` after `other`.
    pub fn mul(&self, other: &Affine) -> Affine {
        Affine {
            signs: self.signs.iter().zip(&other.signs).map(|(a, b)| a * b).collect(),
            t: (0..self.t.len()).map(|i| Rational64::from_integer(self.signs[i]) * other.t[i] + self.t[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1) && self.t.iter().all(|x| *x == Rational64::from_integer(0))
    }

    /// Flip mask and half mask after reducing the translation mod `Z^n`.
    pub fn classes(&self) -> (u64, u64) {
        let mut flips = 0;
        let mut halves = 0;
        for i in 0..self.signs.len() {
            if self.signs[i] == -1 {
                flips |= 1 << i;
            }
            let frac = self.t[i] - self.t[i].floor();
            if frac == Rational64::new(1, 2) {
                halves |= 1 << i;
            } else {
                assert_eq!(frac, Rational64::from_integer(0), "translation not in half units");
            }
        }
        (flips, halves)
    }
}

/// Every product of a subset of generators, computed with rational affine
/// maps; entry `idx` multiplies the generators named by the bits of `idx`
/// in increasing order.
pub fn rational_table(group: &DiagonalGroup) -> Vec<Affine> {
    let n = group.dim;
    let lifts: Vec<Affine> = group.gens.iter().map(|g| Affine::from_masks(n, g.sign.0, g.translation.0)).collect();
    (0..1usize << lifts.len())
        .map(|idx| {
            (0..lifts.len()).filter(|j| idx >> j & 1 == 1).fold(Affine::identity(n), |acc, j| acc.mul(&lifts[j]))
        })
        .collect()
}

/// Looks for an element of finite order among all lifts `x + lambda`,
/// `lambda` in `{-1, 0, 1}^n`, of every non-identity element.
pub fn has_torsion_by_rational_search(group: &DiagonalGroup) -> bool {
    let n = group.dim;
    let table = rational_table(group);
    let lambdas = 3usize.pow(n as u32);
    table.iter().skip(1).any(|x| {
        (0..lambdas).any(|code| {
            let mut y = x.clone();
            let mut c = code;
            for i in 0..n {
                y.t[i] += Rational64::from_integer((c % 3) as i64 - 1);
                c /= 3;
            }
            let square = y.mul(&y);
            !y.is_identity() && square.is_identity()
        })
    })
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn move_bits(x: u64, perm: &[usize]) -> u64 {
    (0..perm.len()).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i])
}

pub type Table = Vec<(u64, u64)>;

/// A basis of `{g : |g & support| even}` chosen by plain elimination.
pub fn kernel_basis(n: usize, support: u64) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    let mut reduced: Vec<u64> = Vec::new();
    for g in 1..1u64 << n {
        if !(g & support).count_ones().is_multiple_of(2) {
            continue;
        }
        let mut r = g;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            basis.push(g);
        }
    }
    basis
}

pub fn xor_table(gens: &[(u64, u64)]) -> Table {
    let mut table: Table = (0..1usize << gens.len())
        .map(|idx| {
            (0..gens.len()).filter(|j| idx >> j & 1 == 1).fold((0, 0), |(f, h), j| (f ^ gens[j].0, h ^ gens[j].1))
        })
        .collect();
    table.sort_unstable();
    table
}

pub fn torsion_free(n: usize, table: &Table) -> bool {
    let full = (1u64 << n) - 1;
    table.iter().all(|&(f, h)| f == 0 || (full & !f) & h != 0)
}

pub fn act(table: &Table, perm: &[usize], coboundary: u64) -> Table {
    let mut out: Table = table
        .iter()
        .map(|&(f, h)| {
            let f2 = move_bits(f, perm);
            (f2, move_bits(h, perm) ^ (coboundary & f2))
        })
        .collect();
    out.sort_unstable();
    out
}

pub struct BruteCensus {
    pub classes: Vec<Table>,
    pub class_of: HashMap<Table, usize>,
}

/// All GHW groups of dimension `n` on every odd support and every assignment
/// of translation classes to a fixed basis, grouped into orbits under all
/// coordinate permutations and coboundaries.
pub fn brute_force_census(n: usize) -> BruteCensus {
    let full = (1u64 << n) - 1;
    let perms = all_permutations(n);
    let mut class_of: HashMap<Table, usize> = HashMap::new();
    let mut classes = Vec::new();
    for support in (1..=full).filter(|s| s.count_ones() % 2 == 1) {
        let basis = kernel_basis(n, support);
        assert_eq!(basis.len(), n - 1);
        let assignments = 1u64 << (n * (n - 1));
        for code in 0..assignments {
            let gens: Vec<(u64, u64)> = basis.iter().enumerate().map(|(j, &b)| (b, code >> (j * n) & full)).collect();
            let table = xor_table(&gens);
            if !torsion_free(n, &table) || class_of.contains_key(&table) {
                continue;
            }
            let id = classes.len();
            let mut stack = vec![table.clone()];
            class_of.insert(table.clone(), id);
            while let Some(t) = stack.pop() {
                for perm in &perms {
                    for c in 0..=full {
                        let image = act(&t, perm, c);
                        if !class_of.contains_key(&image) {
                            class_of.insert(image.clone(), id);
                            stack.push(image);
                        }
                    }
                }
            }
            classes.push(table);
        }
    }
    BruteCensus { classes, class_of }
}

pub fn table_of(p: &GhwPresentation) -> Table {
    let mut t: Table = p.elements().iter().map(|g| (g.sign.0, g.translation.0)).collect();
    t.sort_unstable();
    t
}

pub fn presentation_of(n: usize, table: &Table) -> GhwPresentation {
    let mut gens = Vec::new();
    let mut reduced: Vec<u64> = Vec::new();
    for &(f, h) in table {
        let mut r = f;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            gens.push(Generator::new(f, h));
        }
    }
    GhwPresentation::new(n, gens).unwrap()
}

/// Random coordinate permutation, coboundary and change of generators.
pub fn scramble(p: &GhwPresentation, rng: &mut ChaCha8Rng) -> GhwPresentation {
    let n = p.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let coboundary = rng.gen_range(0..1u64 << n);
    let moved = transform(p, &perm, coboundary).unwrap();
    let elements = moved.elements();
    loop {
        let picks: Vec<Generator> = (0..n - 1).map(|_| elements[rng.gen_range(0..elements.len())]).collect();
        if let Ok(q) = GhwPresentation::new(n, picks) {
            return q;
        }
    }
}

fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..1u32 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }
    let mut g = BigInt::zero();
    for rows in subsets(m.len(), k) {
        for cols in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&IntegerMatrix::from_rows(&sub).determinant());
        }
    }
    g
}

/// Checks `U M V = D`, unimodularity, the divisibility chain and that
/// `d_1 ... d_k` equals the gcd of the `k x k` minors.
pub fn check_smith_normal_form(data: &[Vec<i64>]) -> Result<(), String> {
    let (rows, cols) = (data.len(), data[0].len());
    let m = IntegerMatrix::from_rows(data);
    let snf = smith_normal_form(&m);
    if snf.u.mul(&m).mul(&snf.v) != snf.d {
        return Err("U M V differs from D".into());
    }
    if !snf.u.determinant().abs().is_one() || !snf.v.determinant().abs().is_one() {
        return Err("transform not unimodular".into());
    }
    for r in 0..rows {
        for c in 0..cols {
            if r != c && !snf.d.get(r, c).is_zero() {
                return Err("D not diagonal".into());
            }
        }
    }
    let diag = &snf.diagonal;
    if !diag.iter().take(snf.rank).all(|d| d.is_positive()) || !diag.iter().skip(snf.rank).all(|d| d.is_zero()) {
        return Err("diagonal signs or rank wrong".into());
    }
    if diag[..snf.rank].windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        return Err("divisibility chain broken".into());
    }
    let mut product = BigInt::one();
    for k in 1..=rows.min(cols) {
        let expected = minor_gcd(data, k);
        if k <= snf.rank {
            product *= &diag[k - 1];
            if product != expected {
                return Err(format!("determinantal divisor {k} mismatch"));
            }
        } else if !expected.is_zero() {
            return Err("rank too small".into());
        }
    }
    Ok(())
}

/// Invariant monomials `e_J` of the `j`-th exterior power: subsets `J` of
/// size `j` on which every holonomy element has an even number of flips.
pub fn invariant_monomials(p: &GhwPresentation, j: usize) -> u64 {
    (0..1u64 << p.dim())
        .filter(|s| s.count_ones() as usize == j)
        .filter(|s| p.elements().iter().all(|g| (g.sign.0 & s).count_ones() % 2 == 0))
        .count() as u64
}

/// Permutations `pi` preserving the support for which some coboundary maps
/// the permuted element table back onto the original one.
pub fn brute_force_stabilizer(p: &GhwPresentation) -> u64 {
    let n = p.dim();
    let table = |perm: &[usize], c: u64| {
        let mut t: Vec<(u64, u64)> = p
            .elements()
            .iter()
            .map(|g| {
                let f = move_bits(g.sign.0, perm);
                (f, move_bits(g.translation.0, perm) ^ (c & f))
            })
            .collect();
        t.sort_unstable();
        t
    };
    let identity: Vec<usize> = (0..n).collect();
    let original = table(&identity, 0);
    all_permutations(n)
        .iter()
        .filter(|perm| move_bits(p.support(), perm) == p.support())
        .filter(|perm| (0..1u64 << n).any(|c| table(perm, c) == original))
        .count() as u64
}
