//! Canonical forms and complete censuses of GHW groups.
//!
//! Two presentations are isomorphic exactly when they differ by a coordinate
//! permutation carrying one holonomy hyperplane to the other, followed by a
//! coboundary `c` in `{0, 1/2}^n` (sign changes act trivially on half
//! classes). In functional form, coordinate `i` of the translation map is a
//! functional `m_i` on `H = ker(S)`, defined modulo `S`, and the coboundary
//! adds `e_i` to it. So each `m_i` is reduced to the least element of
//! `m_i + span{S, e_i}`, and the canonical form is the least reduced row tuple
//! over all permutations sending `S` to the leading coordinates.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::automorphisms::out_order;
use crate::bits::{self, full_mask, pairing};
use crate::error::Error;
use crate::group::{normalizing_permutation, GhwPresentation};
use crate::homology::{betti_vector, BettiVector};
use crate::{Result, DEFAULT_CAP, MAX_DIM};

/// Byte encoding `[n, |S|, row_1, .., row_n]` of the canonical form, each row
/// big-endian in `ceil(n/8)` bytes. Byte order is the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    fn encode(n: usize, k: usize, rows: &[u64]) -> Self {
        let width = n.div_ceil(8);
        let mut bytes = Vec::with_capacity(2 + n * width);
        bytes.push(n as u8);
        bytes.push(k as u8);
        for &row in rows {
            bytes.extend_from_slice(&row.to_be_bytes()[8 - width..]);
        }
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0[0] as usize
    }

    pub fn support_size(&self) -> usize {
        self.0[1] as usize
    }

    /// Canonical rows; the support is the leading `support_size` coordinates.
    pub fn rows(&self) -> Vec<u64> {
        let width = self.dim().div_ceil(8);
        self.0[2..].chunks(width).map(|c| c.iter().fold(0u64, |acc, &b| acc << 8 | u64::from(b))).collect()
    }

    /// The canonical representative, built on the standard basis.
    pub fn presentation(&self) -> Result<GhwPresentation> {
        GhwPresentation::from_rows(self.dim(), full_mask(self.support_size()), &self.rows())
    }

    pub fn to_hex(&self) -> String {
        use core::fmt::Write;
        let mut out = String::with_capacity(2 * self.0.len());
        for b in &self.0 {
            let _ = write!(out, "{b:02x}");
        }
        out
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        if !hex.len().is_multiple_of(2) || hex.len() < 4 {
            return None;
        }
        let bytes: Option<Vec<u8>> =
            (0..hex.len()).step_by(2).map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok()).collect();
        let bytes = bytes?;
        let n = bytes[0] as usize;
        if !(2..=MAX_DIM).contains(&n) || bytes.len() != 2 + n * n.div_ceil(8) {
            return None;
        }
        Some(CanonicalKey(bytes))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Least element of `m + span{support, e_pos}`.
#[inline]
pub(crate) fn reduce_row(m: u64, support: u64, pos: usize) -> u64 {
    let e = 1u64 << pos;
    m.min(m ^ support).min(m ^ e).min(m ^ support ^ e)
}

/// Rows after relabelling coordinate `i` as `perm[i]`, each reduced.
pub(crate) fn permuted_reduced_rows(rows: &[u64], perm: &[usize], new_support: u64) -> Vec<u64> {
    let mut out = alloc::vec![0u64; rows.len()];
    for (i, &m) in rows.iter().enumerate() {
        let pos = perm[i];
        out[pos] = reduce_row(bits::permute_bits(m, perm), new_support, pos);
    }
    out
}

pub(crate) fn reduced_rows(rows: &[u64], support: u64) -> Vec<u64> {
    rows.iter().enumerate().map(|(i, &m)| reduce_row(m, support, i)).collect()
}

/// Compares the permuted rows against `best` position by position, stopping
/// at the first difference.
fn compare_permuted(
    rows: &[u64],
    perm: &[usize],
    inverse: &[usize],
    support: u64,
    best: &[u64],
) -> core::cmp::Ordering {
    for (pos, &src) in inverse.iter().enumerate() {
        let r = reduce_row(bits::permute_bits(rows[src], perm), support, pos);
        match r.cmp(&best[pos]) {
            core::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    core::cmp::Ordering::Equal
}

/// Canonical rows of `p`, in coordinates where the support is leading.
pub fn canonical_rows(p: &GhwPresentation) -> Vec<u64> {
    let n = p.dim();
    let k = p.support_size();
    let target = full_mask(k);
    let perms = bits::block_permutations(p.support(), n);
    let mut best = permuted_reduced_rows(p.rows(), &perms[0], target);
    for perm in &perms[1..] {
        let inverse = bits::invert_permutation(perm);
        if compare_permuted(p.rows(), perm, &inverse, target, &best) == core::cmp::Ordering::Less {
            best = permuted_reduced_rows(p.rows(), perm, target);
        }
    }
    best
}

pub fn canonical_key(p: &GhwPresentation) -> CanonicalKey {
    CanonicalKey::encode(p.dim(), p.support_size(), &canonical_rows(p))
}

pub fn are_isomorphic(p: &GhwPresentation, q: &GhwPresentation) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { left: p.dim(), right: q.dim() });
    }
    Ok(p.support_size() == q.support_size() && canonical_key(p) == canonical_key(q))
}

/// One support per class of holonomy representation: `{1}`, `{1,2,3}`, ...,
/// every odd size up to `n`, as masks on the leading coordinates.
pub fn hyperplane_classes(n: usize) -> Vec<u64> {
    (1..=n).step_by(2).map(full_mask).collect()
}

/// Limits applied by [`enumerate_census`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest dimension accepted at all.
    pub cap: usize,
    /// Enables dimensions above [`EnumerationOptions::DEFAULT_MODE_LIMIT`].
    pub extended: bool,
}

impl EnumerationOptions {
    /// Largest dimension enumerated without the extended mode.
    pub const DEFAULT_MODE_LIMIT: usize = 5;

    pub fn extended() -> Self {
        EnumerationOptions { extended: true, ..Self::default() }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let cap = self.cap.min(MAX_DIM);
        if n > cap {
            return Err(Error::DimensionTooLarge { dim: n, limit: cap });
        }
        if n > Self::DEFAULT_MODE_LIMIT && !self.extended {
            return Err(Error::DimensionTooLarge { dim: n, limit: Self::DEFAULT_MODE_LIMIT });
        }
        Ok(())
    }
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { cap: DEFAULT_CAP, extended: false }
    }
}

/// An independent slice of the search: one hyperplane class and one value of
/// the first coordinate functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorkUnit {
    pub dim: usize,
    pub support_size: usize,
    pub first_row: u64,
}

/// Reduced representatives of `F_2^n / span{support, e_pos}`.
fn row_choices(n: usize, support: u64, pos: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|&m| reduce_row(m, support, pos) == m).collect()
}

/// Work units in a fixed order; results merged in any order sort to the same
/// census.
pub fn work_units(n: usize) -> Vec<WorkUnit> {
    hyperplane_classes(n)
        .into_iter()
        .flat_map(|support| {
            let k = support.count_ones() as usize;
            row_choices(n, support, 0).into_iter().map(move |first_row| WorkUnit { dim: n, support_size: k, first_row })
        })
        .collect()
}

struct Search<'a, M> {
    n: usize,
    support: u64,
    choices: Vec<Vec<u64>>,
    /// Non-identity elements of `H` grouped by their largest fixed coordinate.
    buckets: Vec<Vec<u64>>,
    perms: Vec<(Vec<usize>, Vec<usize>)>,
    rows: Vec<u64>,
    found: Vec<Vec<u64>>,
    monitor: &'a mut M,
}

impl<M: FnMut() -> ControlFlow<()>> Search<'_, M> {
    /// Every element whose fixed coordinates are all assigned by now needs a
    /// coordinate it fixes on which its translation is a half.
    fn witnesses_ok(&self, depth: usize) -> bool {
        let fixed_full = full_mask(self.n);
        self.buckets[depth].iter().all(|&g| {
            let fixed = fixed_full & !g;
            bits::bit_indices(fixed).any(|p| pairing(self.rows[p], g))
        })
    }

    fn is_canonical(&self) -> bool {
        self.perms.iter().all(|(perm, inverse)| {
            compare_permuted(&self.rows, perm, inverse, self.support, &self.rows) != core::cmp::Ordering::Less
        })
    }

    fn descend(&mut self, depth: usize) -> ControlFlow<()> {
        if depth <= 2 {
            (self.monitor)()?;
        }
        if depth == self.n {
            if self.is_canonical() {
                self.found.push(self.rows.clone());
            }
            return ControlFlow::Continue(());
        }
        for idx in 0..self.choices[depth].len() {
            self.rows[depth] = self.choices[depth][idx];
            if self.witnesses_ok(depth) {
                self.descend(depth + 1)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Canonical row tuples found in one work unit. `monitor` is polled
/// regularly; breaking from it aborts with [`Error::Interrupted`].
pub fn run_work_unit<M: FnMut() -> ControlFlow<()>>(unit: &WorkUnit, monitor: &mut M) -> Result<Vec<Vec<u64>>> {
    let n = unit.dim;
    let support = full_mask(unit.support_size);
    let mut buckets = alloc::vec![Vec::new(); n];
    for g in 1..1u64 << n {
        if !pairing(support, g) {
            let fixed = full_mask(n) & !g;
            let top = 63 - fixed.leading_zeros() as usize;
            buckets[top].push(g);
        }
    }
    let perms = bits::block_permutations(support, n)
        .into_iter()
        .skip(1)
        .map(|p| {
            let inv = bits::invert_permutation(&p);
            (p, inv)
        })
        .collect();
    let mut choices: Vec<Vec<u64>> = (0..n).map(|pos| row_choices(n, support, pos)).collect();
    choices[0] = alloc::vec![unit.first_row];
    let mut search =
        Search { n, support, choices, buckets, perms, rows: alloc::vec![0; n], found: Vec::new(), monitor };
    match search.descend(0) {
        ControlFlow::Continue(()) => Ok(search.found),
        ControlFlow::Break(()) => Err(Error::Interrupted),
    }
}

/// One isomorphism class with its cached invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub key: CanonicalKey,
    pub presentation: GhwPresentation,
    pub beta1: usize,
    pub orientable: bool,
    pub betti: BettiVector,
    pub h1_order: u64,
    pub out_order: u64,
}

impl CensusEntry {
    /// Entry for canonical rows found by the search on support `{1..k}`.
    pub fn from_canonical_rows(n: usize, k: usize, rows: &[u64]) -> Result<Self> {
        CensusEntry::new(GhwPresentation::from_rows(n, full_mask(k), rows)?)
    }

    pub fn new(presentation: GhwPresentation) -> Result<Self> {
        let report = out_order(&presentation)?;
        Ok(CensusEntry {
            key: canonical_key(&presentation),
            beta1: presentation.first_betti(),
            orientable: presentation.is_orientable(),
            betti: betti_vector(&presentation),
            h1_order: report.h1_order,
            out_order: report.out_order,
            presentation,
        })
    }
}

/// All GHW groups of one dimension up to isomorphism, sorted by key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub dim: usize,
    pub entries: Vec<CensusEntry>,
}

/// One row of the table of counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CensusRow {
    pub dim: usize,
    pub beta1_zero: usize,
    pub beta1_one: usize,
    pub total: usize,
    pub orientable: usize,
    pub non_orientable: usize,
    pub holonomy_representations: usize,
}

impl Census {
    /// Sorts entries by key and drops duplicates.
    pub fn from_entries(dim: usize, mut entries: Vec<CensusEntry>) -> Self {
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        entries.dedup_by(|a, b| a.key == b.key);
        Census { dim, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, key: &CanonicalKey) -> Option<&CensusEntry> {
        self.entries.binary_search_by(|e| e.key.cmp(key)).ok().map(|i| &self.entries[i])
    }

    pub fn row(&self) -> CensusRow {
        let beta1_one = self.entries.iter().filter(|e| e.beta1 == 1).count();
        let orientable = self.entries.iter().filter(|e| e.orientable).count();
        let mut supports: Vec<usize> = self.entries.iter().map(|e| e.key.support_size()).collect();
        supports.sort_unstable();
        supports.dedup();
        CensusRow {
            dim: self.dim,
            beta1_zero: self.len() - beta1_one,
            beta1_one,
            total: self.len(),
            orientable,
            non_orientable: self.len() - orientable,
            holonomy_representations: supports.len(),
        }
    }
}

/// Enumerates every GHW group of dimension `n`, sequentially.
pub fn enumerate_census(n: usize, options: &EnumerationOptions) -> Result<Census> {
    enumerate_census_with(n, options, &mut || ControlFlow::Continue(()))
}

pub fn enumerate_census_with<M: FnMut() -> ControlFlow<()>>(
    n: usize,
    options: &EnumerationOptions,
    monitor: &mut M,
) -> Result<Census> {
    options.check(n)?;
    let mut found = Vec::new();
    for unit in work_units(n) {
        for rows in run_work_unit(&unit, monitor)? {
            found.push((unit.support_size, rows));
        }
    }
    census_from_units(n, found)
}

/// Merges `(support size, canonical rows)` pairs into a census.
pub fn census_from_units(n: usize, found: Vec<(usize, Vec<u64>)>) -> Result<Census> {
    let entries =
        found.into_iter().map(|(k, rows)| CensusEntry::from_canonical_rows(n, k, &rows)).collect::<Result<Vec<_>>>()?;
    Ok(Census::from_entries(n, entries))
}

pub fn census_table(max_dim: usize, options: &EnumerationOptions) -> Result<Vec<CensusRow>> {
    (2..=max_dim).map(|n| Ok(enumerate_census(n, options)?.row())).collect()
}

/// Conjugates a presentation by a coordinate permutation and a coboundary,
/// re-expressing it on permuted generators. Used to check orbit invariance.
pub fn transform(p: &GhwPresentation, perm: &[usize], coboundary: u64) -> Result<GhwPresentation> {
    let gens = p
        .gens()
        .iter()
        .map(|g| {
            let sign = bits::permute_bits(g.sign.0, perm);
            let halves = bits::permute_bits(g.translation.0, perm) ^ (coboundary & sign);
            crate::group::Generator::new(sign, halves)
        })
        .collect();
    GhwPresentation::new(p.dim(), gens)
}

/// The presentation moved to coordinates where its support is leading.
pub fn normalize(p: &GhwPresentation) -> GhwPresentation {
    let perm = normalizing_permutation(p.support(), p.dim());
    transform(p, &perm, 0).expect("relabelling preserves validity")
}
