//! Explicit families and constructions moving between dimensions.

use alloc::vec::Vec;

use crate::bits::{self, full_mask, pairing, Echelon};
use crate::cohomology::{smith_normal_form, IntegerMatrix};
use crate::enumerate::{canonical_key, CanonicalKey};
use crate::error::Error;
use crate::group::{DiagonalGroup, Generator, GhwPresentation, SignVector};
use crate::{Result, MAX_DIM};

fn check_family_dim(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else if n > MAX_DIM {
        Err(Error::DimensionTooLarge { dim: n, limit: MAX_DIM })
    } else {
        Ok(())
    }
}

/// `K_n`: generators `(C_i, e_{i+1}/2)` for `i = 1..n-1`, where `C_i` flips
/// coordinate `i` only.
pub fn klein_group(n: usize) -> Result<GhwPresentation> {
    check_family_dim(n)?;
    let gens = (0..n - 1).map(|i| Generator::new(1 << i, 1 << (i + 1))).collect();
    GhwPresentation::new(n, gens)
}

/// `Gamma_n`: generators `(-C_i, e_i/2 + e_{i+1}/2)` for `i = 1..n-1`.
pub fn gamma_group(n: usize) -> Result<GhwPresentation> {
    check_family_dim(n)?;
    let gens = (0..n - 1).map(|i| Generator::new(full_mask(n) & !(1 << i), 0b11 << i)).collect();
    GhwPresentation::new(n, gens)
}

/// A diagonal integral representation of `Z_2^k` given by generator signs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationSpec {
    pub dim: usize,
    pub gens: Vec<SignVector>,
}

impl RepresentationSpec {
    pub fn new(dim: usize, gens: Vec<SignVector>) -> Self {
        RepresentationSpec { dim, gens }
    }

    fn masks(&self) -> Vec<u64> {
        self.gens.iter().map(|s| s.0).collect()
    }

    /// Faithful, at most `n - 1` generators, and `-Id` not in the image.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidSpec("dimension out of range"));
        }
        if self.gens.len() >= n {
            return Err(Error::InvalidSpec("at most n - 1 generators allowed"));
        }
        let masks = self.masks();
        if masks.iter().any(|&m| m & !full_mask(n) != 0) {
            return Err(Error::InvalidSpec("sign mask out of range"));
        }
        if !bits::is_independent(&masks) {
            return Err(Error::InvalidSpec("generators are not independent"));
        }
        if Echelon::new(&masks).contains(full_mask(n)) {
            return Err(Error::InvalidSpec("image contains -Id"));
        }
        Ok(())
    }
}

/// Adds the least sign `B` outside both the image and its negative.
pub fn extend_representation(spec: &RepresentationSpec) -> Result<RepresentationSpec> {
    spec.validate()?;
    let n = spec.dim;
    if spec.gens.len() + 1 >= n {
        return Err(Error::Precondition("extension needs fewer than n - 1 generators"));
    }
    let echelon = Echelon::new(&spec.masks());
    let full = full_mask(n);
    let b = (1..=full).find(|&b| !echelon.contains(b) && !echelon.contains(b ^ full)).ok_or(Error::NoExtension)?;
    let mut gens = spec.gens.clone();
    gens.push(SignVector(b));
    Ok(RepresentationSpec::new(n, gens))
}

fn insert_bit(x: u64, p: usize) -> u64 {
    let low = x & full_mask(p);
    ((x >> p) << (p + 1)) | low
}

fn drop_bit(x: u64, p: usize) -> u64 {
    let low = x & full_mask(p);
    ((x >> (p + 1)) << p) | low
}

/// Inserts a coordinate at `p` with zero translation, on which an old element
/// `g` acts by `(-1)^<psi, g>`, then adds an element with sign `extra` and the
/// first translation class (by weight, then value) keeping the group
/// torsion-free.
fn lift(base: &DiagonalGroup, p: usize, psi: u64, extra: u64) -> Option<DiagonalGroup> {
    let n = base.dim + 1;
    let mut gens: Vec<Generator> = base
        .gens
        .iter()
        .map(|g| {
            let twist = u64::from(pairing(psi, g.sign.0)) << p;
            Generator::new(insert_bit(g.sign.0, p) | twist, insert_bit(g.translation.0, p))
        })
        .collect();
    let signs: Vec<u64> = gens.iter().map(|g| g.sign.0).collect();
    let echelon = Echelon::new(&signs);
    if echelon.contains(extra) || echelon.contains(extra ^ full_mask(n)) {
        return None;
    }
    let mut candidates: Vec<u64> = (1..=full_mask(n)).collect();
    candidates.sort_by_key(|c| (c.count_ones(), *c));
    gens.push(Generator::IDENTITY);
    for c in candidates {
        *gens.last_mut().expect("pushed above") = Generator::new(extra, c);
        let group = DiagonalGroup::new(n, gens.clone());
        if group.is_torsion_free() == Ok(true) {
            return Some(group);
        }
    }
    None
}

/// Characters `psi` of the base holonomy, one per distinct action, trivial
/// character first.
fn base_characters(base: &DiagonalGroup) -> Vec<u64> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for psi in 0..=full_mask(base.dim) {
        let action: Vec<bool> = base.gens.iter().map(|g| pairing(psi, g.sign.0)).collect();
        if !seen.contains(&action) {
            seen.push(action);
            out.push(psi);
        }
    }
    out
}

/// A torsion-free group of dimension `n` with holonomy `span(basis)`, a
/// hyperplane avoiding `-Id`.
fn realize_hyperplane(n: usize, basis: &[u64]) -> Result<DiagonalGroup> {
    if n == 1 {
        return Ok(DiagonalGroup::new(1, Vec::new()));
    }
    let elements = bits::span(basis);
    if elements.iter().all(|g| g.count_ones() % 2 == 0) {
        let gamma = gamma_group(n)?;
        let gens = basis
            .iter()
            .map(|&g| Generator {
                sign: SignVector(g),
                translation: gamma.translation_of(SignVector(g)).expect("same holonomy"),
            })
            .collect();
        return Ok(DiagonalGroup::new(n, gens));
    }
    for p in (0..n).filter(|&p| elements.contains(&(1 << p))) {
        let sub: Vec<u64> = elements.iter().filter(|&&g| g & (1 << p) == 0).map(|&g| drop_bit(g, p)).collect();
        let sub_basis = Echelon::new(&sub).rows;
        let base = realize_hyperplane(n - 1, &sub_basis)?;
        for psi in base_characters(&base) {
            if let Some(group) = lift(&base, p, psi, 1 << p) {
                return Ok(group);
            }
        }
    }
    Err(Error::NoExtension)
}

/// A torsion-free diagonal group whose generators carry exactly the signs of
/// `spec`. When `spec` has `n - 1` generators the result is GHW.
pub fn realize_representation(spec: &RepresentationSpec) -> Result<DiagonalGroup> {
    spec.validate()?;
    let n = spec.dim;
    if spec.gens.is_empty() {
        return Ok(DiagonalGroup::new(n, Vec::new()));
    }
    let mut full = spec.clone();
    while full.gens.len() + 1 < n {
        full = extend_representation(&full)?;
    }
    let ambient = realize_hyperplane(n, &full.masks())?;
    let ambient = GhwPresentation::new(n, ambient.gens)?;
    let gens = spec
        .gens
        .iter()
        .map(|&s| Generator { sign: s, translation: ambient.translation_of(s).expect("subgroup") })
        .collect();
    let group = DiagonalGroup::new(n, gens);
    debug_assert!(group.is_bieberbach());
    Ok(group)
}

/// An index-2 subgroup `G' = ker(phi)` of the holonomy group together with
/// the coordinate to drop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReductionChoice {
    pub functional: u64,
    pub coordinate: usize,
}

impl ReductionChoice {
    /// `G' = ker(s(.)_i)`, the kernel of the translation coordinate `i`.
    pub fn kernel_of_coordinate(p: &GhwPresentation, i: usize) -> Result<Self> {
        if i >= p.dim() {
            return Err(Error::InvalidChoice("coordinate out of range"));
        }
        let m = p.rows()[i];
        if m == 0 || m == p.support() {
            return Err(Error::InvalidChoice("translation coordinate vanishes on the holonomy"));
        }
        Ok(ReductionChoice { functional: m, coordinate: i })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub choice: ReductionChoice,
    pub result: GhwPresentation,
    pub key: CanonicalKey,
    /// No element of `G'` flips the dropped coordinate, so the subgroup is
    /// normal in the original group.
    pub normal: bool,
}

fn subgroup_elements<'a>(
    p: &'a GhwPresentation,
    choice: &'a ReductionChoice,
) -> impl Iterator<Item = &'a Generator> + 'a {
    p.elements().iter().filter(move |g| !pairing(choice.functional, g.sign.0))
}

fn check_choice(p: &GhwPresentation, choice: &ReductionChoice) -> Result<()> {
    let n = p.dim();
    let i = choice.coordinate;
    if n < 3 {
        return Err(Error::Precondition("reduction needs dimension at least 3"));
    }
    if i >= n || choice.functional & !full_mask(n) != 0 {
        return Err(Error::InvalidChoice("coordinate or functional out of range"));
    }
    if choice.functional == 0 || choice.functional == p.support() {
        return Err(Error::InvalidChoice("functional vanishes on the holonomy"));
    }
    let leaks = subgroup_elements(p, choice).any(|g| !g.sign.is_flipped(i) && g.translation.is_half(i));
    if leaks {
        return Err(Error::InvalidChoice("subgroup translates along the dropped coordinate"));
    }
    Ok(())
}

/// The subgroup of elements over `G'` with zero `i`-th translation, acting on
/// the remaining coordinates.
pub fn reduce(p: &GhwPresentation, choice: &ReductionChoice) -> Result<GhwPresentation> {
    check_choice(p, choice)?;
    let i = choice.coordinate;
    let mut echelon = Echelon::new(&[]);
    let mut gens = Vec::new();
    for g in subgroup_elements(p, choice) {
        if !echelon.contains(g.sign.0) {
            echelon = Echelon::new(&[echelon.rows.as_slice(), &[g.sign.0]].concat());
            gens.push(Generator::new(drop_bit(g.sign.0, i), drop_bit(g.translation.0, i)));
        }
    }
    GhwPresentation::new(p.dim() - 1, gens).map_err(|e| match e {
        Error::InvalidPresentation(reason) => Error::ReductionNotGhw(reason),
        other => other,
    })
}

/// Every admissible `(G', i)` whose reduction is GHW, ordered by coordinate
/// then functional. Functionals are taken modulo the support.
pub fn list_reductions(p: &GhwPresentation) -> Result<Vec<Reduction>> {
    let n = p.dim();
    if n < 3 {
        return Err(Error::Precondition("reduction needs dimension at least 3"));
    }
    let support = p.support();
    let mut out = Vec::new();
    for coordinate in 0..n {
        for functional in 1..=full_mask(n) {
            if functional > functional ^ support {
                continue;
            }
            let choice = ReductionChoice { functional, coordinate };
            match reduce(p, &choice) {
                Ok(result) => {
                    let normal = subgroup_elements(p, &choice).all(|g| !g.sign.is_flipped(coordinate));
                    out.push(Reduction { choice, key: canonical_key(&result), result, normal });
                }
                Err(Error::InvalidChoice(_) | Error::ReductionNotGhw(_)) => {}
                Err(other) => return Err(other),
            }
        }
    }
    Ok(out)
}

/// A group of one dimension higher together with a reduction recovering the
/// input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub presentation: GhwPresentation,
    pub round_trip: ReductionChoice,
}

/// Adds one coordinate. The new holonomy is spanned by the old elements,
/// acting on the new coordinate through a character, and one extra sign;
/// the reflection in the new coordinate is tried first, then every other
/// extra sign. The result reduces back to the input along the old elements.
pub fn embed_up_exist(p: &GhwPresentation) -> Result<Embedding> {
    let n = p.dim();
    if n + 1 > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n + 1, limit: MAX_DIM });
    }
    let key = canonical_key(p);
    let base = p.to_group();
    let characters = base_characters(&base);
    for pos in 0..=n {
        let mut extras: Vec<u64> = (1..=full_mask(n + 1)).collect();
        extras.sort_by_key(|&x| (x != 1 << pos, x.count_ones(), x));
        for &extra in &extras {
            for &psi in &characters {
                let Some(group) = lift(&base, pos, psi, extra) else { continue };
                let Ok(lifted) = GhwPresentation::new(n + 1, group.gens) else { continue };
                let signs: Vec<u64> = lifted.gens().iter().map(|g| g.sign.0).collect();
                let duals = bits::dual_basis(&signs).expect("independent generators");
                let round_trip = ReductionChoice { functional: duals[n - 1], coordinate: pos };
                if reduce(&lifted, &round_trip).map(|q| canonical_key(&q)).as_ref() == Ok(&key) {
                    return Ok(Embedding { presentation: lifted, round_trip });
                }
            }
        }
    }
    Err(Error::NoExtension)
}

/// `G x_alpha Z` with `1` acting as `-Id`: the old generators plus
/// `(-Id on the old coordinates, e_{n+1}/2)`.
pub fn semidirect_minus_id(p: &GhwPresentation) -> Result<Embedding> {
    if !p.is_orientable() {
        return Err(Error::NotOriented);
    }
    let n = p.dim();
    if n + 1 > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n + 1, limit: MAX_DIM });
    }
    let mut gens = p.gens().to_vec();
    gens.push(Generator::new(full_mask(n), 1 << n));
    let presentation = GhwPresentation::new(n + 1, gens)?;
    let round_trip = ReductionChoice::kernel_of_coordinate(&presentation, n)?;
    Ok(Embedding { presentation, round_trip })
}

/// An exact affine map `x -> Bx + t` with `B` diagonal, translations in
/// half units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalIsometry {
    pub flips: u64,
    pub half_units: Vec<i64>,
}

impl DiagonalIsometry {
    pub fn from_generator(n: usize, g: Generator) -> Self {
        let half_units = (0..n).map(|i| i64::from(g.translation.is_half(i))).collect();
        DiagonalIsometry { flips: g.sign.0, half_units }
    }

    pub fn translation(half_units: Vec<i64>) -> Self {
        DiagonalIsometry { flips: 0, half_units }
    }

    fn apply_linear(&self, v: &[i64]) -> Vec<i64> {
        v.iter().enumerate().map(|(i, &x)| if self.flips >> i & 1 == 1 { -x } else { x }).collect()
    }

    /// `self * other`, i.e. `other` applied first.
    pub fn compose(&self, other: &Self) -> Self {
        let moved = self.apply_linear(&other.half_units);
        DiagonalIsometry {
            flips: self.flips ^ other.flips,
            half_units: moved.iter().zip(&self.half_units).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        DiagonalIsometry {
            flips: self.flips,
            half_units: self.apply_linear(&self.half_units).iter().map(|x| -x).collect(),
        }
    }

    pub fn conjugate_by(&self, by: &Self) -> Self {
        by.compose(self).compose(&by.inverse())
    }

    /// Integer translation vector when this is a lattice translation.
    pub fn lattice_vector(&self) -> Option<Vec<i64>> {
        if self.flips != 0 || self.half_units.iter().any(|x| x % 2 != 0) {
            return None;
        }
        Some(self.half_units.iter().map(|x| x / 2).collect())
    }
}

/// Evidence that conjugation leaves the image of [`embed_up_mono`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNormalWitness {
    pub element: DiagonalIsometry,
    pub conjugator: DiagonalIsometry,
    pub conjugate: DiagonalIsometry,
    /// Every element of the image has zero last translation coordinate while
    /// the conjugate does not.
    pub outside_image: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoEmbedding {
    pub source_dim: usize,
    /// Images of the generators of `Gamma_n` inside `Gamma_{n+1}`.
    pub images: Vec<Generator>,
    /// Whether the image of every element lies in `Gamma_{n+1}` with the
    /// matching translation class.
    pub verified: bool,
    pub witness: NonNormalWitness,
}

/// `Gamma_n -> Gamma_{n+1}`, `(B, b) -> (diag(B, (-1)^k), (b, 0))` where `k`
/// counts generators in a word for `B`.
pub fn embed_up_mono(p: &GhwPresentation) -> Result<MonoEmbedding> {
    let n = p.dim();
    if n + 1 > MAX_DIM || p.gens() != gamma_group(n)?.gens() {
        return Err(Error::NotGammaFamily);
    }
    let target = gamma_group(n + 1)?;
    let image_of = |idx: usize, g: &Generator| {
        let last = u64::from(idx.count_ones() % 2 == 1) << n;
        Generator { sign: SignVector(g.sign.0 | last), translation: g.translation }
    };
    let verified = p.elements().iter().enumerate().all(|(idx, g)| {
        let img = image_of(idx, g);
        target.translation_of(img.sign) == Some(img.translation)
    });
    let images: Vec<Generator> = p.gens().iter().map(|g| image_of(1, g)).collect();
    let element = DiagonalIsometry::from_generator(n + 1, images[0]);
    let mut shift = alloc::vec![0i64; n + 1];
    shift[n] = 2;
    let conjugator = DiagonalIsometry::translation(shift);
    let conjugate = element.conjugate_by(&conjugator);
    let image_last_zero = images.iter().all(|g| !g.translation.is_half(n));
    let outside_image = image_last_zero && conjugate.half_units[n] != 0;
    Ok(MonoEmbedding {
        source_dim: n,
        images,
        verified,
        witness: NonNormalWitness { element, conjugator, conjugate, outside_image },
    })
}

/// Two elements generating a copy of the didicosm group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DidicosmWitness {
    pub first: Generator,
    pub second: Generator,
    /// The single coordinate fixed by `first`.
    pub fixed_coordinate: usize,
    /// A coordinate fixed by `second` carrying a half.
    pub half_coordinate: usize,
    /// Lattice vectors generating the translation subgroup.
    pub lattice: Vec<Vec<i64>>,
    pub lattice_rank: usize,
    pub beta1: usize,
}

fn integer_rank(vectors: &[Vec<i64>], mask: u64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { x } else { 0 }).collect())
        .collect();
    smith_normal_form(&IntegerMatrix::from_rows(&rows)).rank
}

fn check_pair(n: usize, a: Generator, c: Generator) -> Option<(Vec<Vec<i64>>, usize, usize)> {
    let signs = [a.sign.0, c.sign.0];
    if !bits::is_independent(&signs) {
        return None;
    }
    let product = a.compose(c);
    if ![a, c, product].iter().all(|g| g.has_infinite_order(n)) {
        return None;
    }
    let a = DiagonalIsometry::from_generator(n, a);
    let c = DiagonalIsometry::from_generator(n, c);
    let (ai, ci) = (a.inverse(), c.inverse());
    let words = [
        a.compose(&a),
        c.compose(&c),
        c.compose(&a).compose(&ci).compose(&ai),
        a.compose(&c).compose(&a).compose(&ci),
        a.compose(&c).compose(&c).compose(&ai),
    ];
    let lattice: Vec<Vec<i64>> = words.iter().map(|w| w.lattice_vector()).collect::<Option<_>>()?;
    let full = full_mask(n);
    let rank = integer_rank(&lattice, full);
    let acts_faithfully = [a.flips, c.flips, a.flips ^ c.flips].iter().all(|&f| integer_rank(&lattice, f) > 0);
    let beta1 = integer_rank(&lattice, full & !a.flips & !c.flips);
    (rank == 3 && acts_faithfully).then_some((lattice, rank, beta1))
}

/// Finds `(B, b)` fixing one coordinate `p` and `(C, c)` flipping `p` that
/// generate a three-dimensional Bieberbach group with holonomy `Z_2^2` and
/// `b_1 = 0`, which is the didicosm group.
pub fn didicosm_witness(p: &GhwPresentation) -> Result<DidicosmWitness> {
    let n = p.dim();
    if n < 3 || p.first_betti() != 0 {
        return Err(Error::Precondition("needs trivial center and dimension at least 3"));
    }
    for &a in p.elements() {
        let fixed = a.sign.fixed(n);
        if fixed.count_ones() != 1 {
            continue;
        }
        let pos = fixed.trailing_zeros() as usize;
        for &c in p.elements().iter().filter(|c| c.sign.is_flipped(pos)) {
            let Some((lattice, lattice_rank, beta1)) = check_pair(n, a, c) else { continue };
            if beta1 != 0 {
                continue;
            }
            let half_coordinate = (c.sign.fixed(n) & c.translation.0).trailing_zeros() as usize;
            return Ok(DidicosmWitness {
                first: a,
                second: c,
                fixed_coordinate: pos,
                half_coordinate,
                lattice,
                lattice_rank,
                beta1,
            });
        }
    }
    Err(Error::NoWitness)
}
