//! Diagonal Bieberbach groups in half-integer normal form.
//!
//! An element `(B, b)` of such a group has `B` diagonal with `±1` entries and
//! `b` taken modulo `Z^n` with coordinates in `{0, 1/2}`. Both parts are
//! bitmasks. Because `-1/2 = 1/2 mod Z`, the sign part acts trivially on
//! translation classes and composition is a plain XOR of both masks.

use alloc::vec::Vec;
use core::fmt;
use core::ops::BitXor;

use crate::bits::{self, full_mask, pairing, parity, Echelon};
use crate::error::{Error, InvalidReason};
use crate::{Result, MAX_DIM};

/// A diagonal orthogonal matrix with `±1` entries; bit `i` set means entry
/// `i + 1` is `-1`. The dimension is carried by the owning group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub u64);

impl SignVector {
    pub const IDENTITY: SignVector = SignVector(0);

    /// `C_{i+1} = diag(1, .., -1, .., 1)` with the `-1` at 0-based index `i`.
    pub fn reflection(i: usize) -> Self {
        SignVector(1 << i)
    }

    pub fn minus_identity(n: usize) -> Self {
        SignVector(full_mask(n))
    }

    pub fn flips(self) -> u64 {
        self.0
    }

    pub fn is_flipped(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Coordinates on which the matrix acts as `+1`.
    pub fn fixed(self, n: usize) -> u64 {
        full_mask(n) & !self.0
    }

    /// Determinant `+1`, i.e. an even number of `-1` entries.
    pub fn is_orientation_preserving(self) -> bool {
        !parity(self.0)
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl BitXor for SignVector {
    type Output = SignVector;
    fn bitxor(self, rhs: Self) -> Self {
        SignVector(self.0 ^ rhs.0)
    }
}

/// A translation modulo `Z^n` with coordinates in `{0, 1/2}`; bit `i` set
/// means coordinate `i + 1` is `1/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TranslationClass(pub u64);

impl TranslationClass {
    pub const ZERO: TranslationClass = TranslationClass(0);

    /// `e_{i+1} / 2`.
    pub fn half(i: usize) -> Self {
        TranslationClass(1 << i)
    }

    pub fn halves(self) -> u64 {
        self.0
    }

    pub fn is_half(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

impl BitXor for TranslationClass {
    type Output = TranslationClass;
    fn bitxor(self, rhs: Self) -> Self {
        TranslationClass(self.0 ^ rhs.0)
    }
}

/// An element `(B, b)` up to lattice translations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub sign: SignVector,
    pub translation: TranslationClass,
}

impl Generator {
    pub const IDENTITY: Generator = Generator { sign: SignVector::IDENTITY, translation: TranslationClass::ZERO };

    pub fn new(flips: u64, halves: u64) -> Self {
        Generator { sign: SignVector(flips), translation: TranslationClass(halves) }
    }

    /// Product in the group, `(B,b)(C,c) = (BC, Bc + b)` reduced mod `Z^n`.
    pub fn compose(self, other: Generator) -> Generator {
        Generator { sign: self.sign ^ other.sign, translation: self.translation ^ other.translation }
    }

    /// `(B, b)^2 = (Id, (B + Id) b)` is a nonzero lattice vector for every lift
    /// exactly when some coordinate fixed by `B` carries a half.
    pub fn has_infinite_order(self, n: usize) -> bool {
        self.sign.fixed(n) & self.translation.0 != 0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:#b}, {:#b})", self.sign.0, self.translation.0)
    }
}

fn check_dim(n: usize) -> Result<(), InvalidReason> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(InvalidReason::Dimension(n))
    }
}

fn check_masks(n: usize, gens: &[Generator]) -> Result<(), InvalidReason> {
    let full = full_mask(n);
    if gens.iter().any(|g| g.sign.0 & !full != 0 || g.translation.0 & !full != 0) {
        Err(InvalidReason::MaskOutOfRange)
    } else {
        Ok(())
    }
}

/// Expands generator values to the full translation map on the holonomy
/// group. Entry `idx` is the product of the generators selected by the bits of
/// `idx`, so entry 0 is the identity.
pub fn expand_cocycle(gens: &[Generator]) -> Result<Vec<Generator>> {
    let signs: Vec<u64> = gens.iter().map(|g| g.sign.0).collect();
    if gens.len() > MAX_DIM || !bits::is_independent(&signs) {
        return Err(Error::DependentGenerators);
    }
    Ok(span_elements(gens))
}

fn span_elements(gens: &[Generator]) -> Vec<Generator> {
    let mut out = alloc::vec![Generator::IDENTITY; 1 << gens.len()];
    for idx in 1..out.len() {
        let low = idx.trailing_zeros() as usize;
        out[idx] = out[idx & (idx - 1)].compose(gens[low]);
    }
    out
}

fn first_torsion(n: usize, elements: &[Generator]) -> Option<Generator> {
    elements.iter().find(|g| !g.sign.is_identity() && !g.has_infinite_order(n)).copied()
}

/// A diagonal group given by generators, not yet checked for anything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalGroup {
    pub dim: usize,
    pub gens: Vec<Generator>,
}

impl DiagonalGroup {
    pub fn new(dim: usize, gens: Vec<Generator>) -> Self {
        DiagonalGroup { dim, gens }
    }

    pub fn expand_cocycle(&self) -> Result<Vec<Generator>> {
        check_dim(self.dim)?;
        check_masks(self.dim, &self.gens)?;
        expand_cocycle(&self.gens)
    }

    /// First non-identity element of finite order, if any.
    pub fn first_torsion_element(&self) -> Result<Option<Generator>> {
        let elements = self.expand_cocycle()?;
        Ok(first_torsion(self.dim, &elements))
    }

    pub fn is_torsion_free(&self) -> Result<bool> {
        Ok(self.first_torsion_element()?.is_none())
    }

    /// Whether this presents a diagonal Bieberbach group with holonomy
    /// `Z_2^k`, `k` the number of generators (not necessarily GHW).
    pub fn is_bieberbach(&self) -> bool {
        let Ok(elements) = self.expand_cocycle() else { return false };
        let signs: Vec<u64> = self.gens.iter().map(|g| g.sign.0).collect();
        let minus_id = full_mask(self.dim);
        !Echelon::new(&signs).contains(minus_id) && first_torsion(self.dim, &elements).is_none()
    }
}

/// Outcome of [`validate_ghw`]. The verdict is valid exactly when every flag
/// holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    /// The generators number `n - 1`.
    pub rank_ok: bool,
    /// The generator sign vectors are independent, so `Z_2^(n-1)` embeds.
    pub faithful: bool,
    pub minus_id_free: bool,
    pub torsion_free: bool,
    pub offending: Option<Generator>,
    /// No non-lattice pure translation is generated, so the translation
    /// subgroup is exactly `Z^n`.
    pub lattice_maximal: bool,
    /// Odd support `S` of the hyperplane `H = ker(sum_{i in S} x_i)`.
    pub support: Option<u64>,
    /// Coordinate permutation (image table) sending `S` to the leading
    /// coordinates, order preserved inside and outside `S`.
    pub normalizing_permutation: Option<Vec<usize>>,
    pub verdict: Result<(), InvalidReason>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_ok()
    }
}

/// Checks whether `group` presents a GHW Bieberbach group of its dimension.
pub fn validate_ghw(group: &DiagonalGroup) -> ValidationReport {
    let n = group.dim;
    let mut report = ValidationReport {
        dim: n,
        rank_ok: false,
        faithful: false,
        minus_id_free: false,
        torsion_free: false,
        offending: None,
        lattice_maximal: false,
        support: None,
        normalizing_permutation: None,
        verdict: Ok(()),
    };
    let structural = check_dim(n).and_then(|_| check_masks(n, &group.gens));
    if let Err(reason) = structural {
        report.verdict = Err(reason);
        return report;
    }
    if n < 2 {
        report.verdict = Err(InvalidReason::Dimension(n));
        return report;
    }
    let signs: Vec<u64> = group.gens.iter().map(|g| g.sign.0).collect();
    let ech = Echelon::new(&signs);
    report.rank_ok = group.gens.len() == n - 1;
    report.faithful = ech.rank() == signs.len();
    report.minus_id_free = !ech.contains(full_mask(n));

    if group.gens.len() <= MAX_DIM {
        let elements = span_elements(&group.gens);
        report.lattice_maximal =
            elements.iter().all(|g| !g.sign.is_identity() || g.translation == TranslationClass::ZERO);
        report.offending = first_torsion(n, &elements);
        report.torsion_free = report.offending.is_none();
    }

    if report.rank_ok && report.faithful {
        let ann = bits::annihilator(&signs, n);
        debug_assert_eq!(ann.len(), 1);
        let support = ann[0];
        report.support = Some(support);
        report.normalizing_permutation = Some(normalizing_permutation(support, n));
    }

    report.verdict = if !report.rank_ok {
        Err(InvalidReason::HolonomyRank { expected: n - 1, found: group.gens.len() })
    } else if !report.faithful {
        Err(InvalidReason::NotFaithful)
    } else if !report.lattice_maximal {
        Err(InvalidReason::LatticeNotMaximal)
    } else if !report.minus_id_free {
        Err(InvalidReason::ContainsMinusIdentity)
    } else if let Some(g) = report.offending {
        Err(InvalidReason::Torsion { flips: g.sign.0, halves: g.translation.0 })
    } else {
        Ok(())
    };
    report
}

/// Stable permutation moving the coordinates of `support` to the front.
pub fn normalizing_permutation(support: u64, n: usize) -> Vec<usize> {
    let mut perm = alloc::vec![0; n];
    let mut next = 0;
    for i in bits::bit_indices(support) {
        perm[i] = next;
        next += 1;
    }
    for i in bits::bit_indices(full_mask(n) & !support) {
        perm[i] = next;
        next += 1;
    }
    perm
}

/// Basis of `H = ker(sum_{i in S} x_i)`: `e_p + e_j` for `j` in `S` other than
/// its lowest coordinate `p`, then `e_j` for `j` outside `S`.
pub fn standard_basis(support: u64, n: usize) -> Vec<u64> {
    let p = support.trailing_zeros() as usize;
    let mut basis: Vec<u64> = bits::bit_indices(support & !(1 << p)).map(|j| 1 << p | 1 << j).collect();
    basis.extend(bits::bit_indices(full_mask(n) & !support).map(|j| 1u64 << j));
    basis
}

/// A validated GHW group: holonomy `H = ker(S)` of order `2^(n-1)` inside the
/// diagonal sign group and a linear, torsion-free translation map `s` on it.
///
/// Besides the generators the presentation caches the full element table and,
/// for each coordinate `i`, a functional `m_i` with `s(g)_i = <m_i, g>` for
/// all `g` in `H` (defined modulo `S`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhwPresentation {
    dim: usize,
    support: u64,
    gens: Vec<Generator>,
    elements: Vec<Generator>,
    rows: Vec<u64>,
}

/// Elements of a GHW group singled out by their number of fixed coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedElements {
    /// Elements whose sign part fixes exactly one coordinate.
    pub one_fixed: Vec<Generator>,
    /// Elements whose sign part flips exactly one coordinate.
    pub one_flipped: Vec<Generator>,
}

impl GhwPresentation {
    pub fn new(dim: usize, gens: Vec<Generator>) -> Result<Self> {
        let group = DiagonalGroup::new(dim, gens);
        let report = validate_ghw(&group);
        report.verdict?;
        let support = report.support.expect("support of a valid presentation");
        let gens = group.gens;
        let elements = span_elements(&gens);
        let signs: Vec<u64> = gens.iter().map(|g| g.sign.0).collect();
        let duals = bits::dual_basis(&signs).expect("independent generators");
        let rows = (0..dim)
            .map(|i| gens.iter().zip(&duals).filter(|(g, _)| g.translation.is_half(i)).fold(0u64, |m, (_, d)| m ^ d))
            .collect();
        Ok(GhwPresentation { dim, support, gens, elements, rows })
    }

    /// Builds the presentation on the standard basis of `ker(S)` whose
    /// translation map has coordinate functionals `rows`.
    pub fn from_rows(dim: usize, support: u64, rows: &[u64]) -> Result<Self> {
        if rows.len() != dim || !(2..=MAX_DIM).contains(&dim) {
            return Err(InvalidReason::Dimension(dim).into());
        }
        let gens = standard_basis(support, dim)
            .into_iter()
            .map(|g| Generator::new(g, translation_from_rows(rows, g)))
            .collect();
        GhwPresentation::new(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn support_size(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    /// All `2^(n-1)` elements; index bit `j` selects generator `j`.
    pub fn elements(&self) -> &[Generator] {
        &self.elements
    }

    /// Coordinate functionals of the translation map.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn to_group(&self) -> DiagonalGroup {
        DiagonalGroup::new(self.dim, self.gens.clone())
    }

    pub fn contains_sign(&self, sign: SignVector) -> bool {
        sign.0 & !full_mask(self.dim) == 0 && !pairing(self.support, sign.0)
    }

    /// `s(g)` for `g` in the holonomy group.
    pub fn translation_of(&self, sign: SignVector) -> Option<TranslationClass> {
        self.contains_sign(sign).then(|| TranslationClass(translation_from_rows(&self.rows, sign.0)))
    }

    /// Character `chi_i` as the column `g -> [g flips coordinate i]` over
    /// [`Self::elements`].
    pub fn characters(&self) -> Vec<Vec<bool>> {
        (0..self.dim).map(|i| self.elements.iter().map(|g| g.sign.is_flipped(i)).collect()).collect()
    }

    /// Whether `chi_i` is trivial on `H`, i.e. `S = {i}`.
    pub fn is_trivial_character(&self, i: usize) -> bool {
        self.support == 1 << i
    }

    pub fn first_betti(&self) -> usize {
        (0..self.dim).filter(|&i| self.is_trivial_character(i)).count()
    }

    pub fn is_orientable(&self) -> bool {
        self.gens.iter().all(|g| g.sign.is_orientation_preserving())
    }

    pub fn has_nontrivial_center(&self) -> bool {
        self.first_betti() == 1
    }

    pub fn find_distinguished_elements(&self) -> DistinguishedElements {
        let n = self.dim as u32;
        let one_fixed = self.elements.iter().filter(|g| g.sign.0.count_ones() == n - 1).copied().collect();
        let one_flipped = self.elements.iter().filter(|g| g.sign.0.count_ones() == 1).copied().collect();
        DistinguishedElements { one_fixed, one_flipped }
    }
}

pub(crate) fn translation_from_rows(rows: &[u64], g: u64) -> u64 {
    rows.iter().enumerate().filter(|(_, &m)| pairing(m, g)).fold(0u64, |t, (i, _)| t | 1 << i)
}

impl TryFrom<DiagonalGroup> for GhwPresentation {
    type Error = Error;
    fn try_from(group: DiagonalGroup) -> Result<Self> {
        GhwPresentation::new(group.dim, group.gens)
    }
}
