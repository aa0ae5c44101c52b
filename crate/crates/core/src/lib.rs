//! Exact combinatorial engine for generalized Hantzsche-Wendt (GHW) flat
//! manifolds: Bieberbach groups of dimension `n` whose holonomy group is
//! `Z_2^(n-1)`.
//!
//! Every GHW group is of diagonal type, so a group is stored as a set of
//! diagonal `±1` matrices (bitmasks) together with translation parts reduced
//! modulo the standard lattice `Z^n` to coordinates in `{0, 1/2}`. In that
//! normal form the sign action on translation classes is trivial and the
//! translation map `s` becomes linear over `F_2`, which is what every module
//! here exploits.
//!
//! The crate is `no_std` (it needs `alloc`). IO, file formats, parallel
//! enumeration and the command line live in the `ghw` companion crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod automorphisms;
pub mod bits;
pub mod cohomology;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod graph;
pub mod group;
pub mod homology;
pub mod literal;

pub use crate::automorphisms::{normalizer_stabilizer_order, out_order, OutReport};
pub use crate::cohomology::{h1_closed_form, h1_order, smith_normal_form, IntegerMatrix, SnfResult};
pub use crate::constructions::{
    didicosm_witness, embed_up_exist, embed_up_mono, extend_representation, gamma_group, klein_group, list_reductions,
    realize_representation, reduce, semidirect_minus_id, DiagonalIsometry, DidicosmWitness, Embedding, MonoEmbedding,
    NonNormalWitness, Reduction, ReductionChoice, RepresentationSpec,
};
pub use crate::enumerate::{
    are_isomorphic, canonical_key, census_table, enumerate_census, hyperplane_classes, CanonicalKey, Census,
    CensusEntry, CensusRow, EnumerationOptions, WorkUnit,
};
pub use crate::error::{Error, InvalidReason};
pub use crate::graph::{assemble_graph, build_graph, Edge, GhwGraph, Vertex};
pub use crate::group::{
    validate_ghw, DiagonalGroup, Generator, GhwPresentation, SignVector, TranslationClass, ValidationReport,
};
pub use crate::homology::{betti_vector, exterior_invariant_dim, is_rational_homology_sphere, BettiVector};

/// Hard ceiling on the dimension of any group handled here. Group operations
/// walk all `2^(n-1)` holonomy elements, and canonical forms walk up to
/// `(n-1)!` permutations.
pub const MAX_DIM: usize = 16;

/// Default dimension cap for enumeration and the command line.
pub const DEFAULT_CAP: usize = 8;

pub type Result<T, E = Error> = core::result::Result<T, E>;
