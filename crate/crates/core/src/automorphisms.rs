//! Order of the outer automorphism group.
//!
//! `Out(G)` is an extension of the permutation part of the normalizer of the
//! holonomy representation by `H^1(H; Z^n_alpha)` and the `Z/2` coming from
//! the sign of the lattice, so its order is the product of the three.

use crate::bits::{self, full_mask};
use crate::cohomology::h1_order;
use crate::enumerate::{normalize, permuted_reduced_rows, reduced_rows};
use crate::group::GhwPresentation;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OutReport {
    pub h1_order: u64,
    /// Coordinate permutations preserving the support that fix the
    /// cohomology class of the translation map.
    pub perm_stabilizer_order: u64,
    pub out_order: u64,
    pub bound: u64,
}

impl OutReport {
    pub fn within_bound(&self) -> bool {
        self.out_order <= self.bound
    }
}

pub fn normalizer_stabilizer_order(p: &GhwPresentation) -> u64 {
    let p = normalize(p);
    let n = p.dim();
    let support = full_mask(p.support_size());
    let base = reduced_rows(p.rows(), support);
    bits::block_permutations(support, n)
        .iter()
        .filter(|perm| permuted_reduced_rows(p.rows(), perm, support) == base)
        .count() as u64
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn out_order(p: &GhwPresentation) -> Result<OutReport> {
    let h1 = h1_order(p)?;
    let stab = normalizer_stabilizer_order(p);
    let n = p.dim();
    let bound = if p.first_betti() == 1 { (1u64 << n) * factorial(n - 1) } else { (1u64 << (n + 1)) * factorial(n) };
    Ok(OutReport { h1_order: h1, perm_stabilizer_order: stab, out_order: h1 * 2 * stab, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gamma_group, klein_group};

    #[test]
    fn klein_bottle() {
        let r = out_order(&klein_group(2).unwrap()).unwrap();
        assert_eq!((r.h1_order, r.perm_stabilizer_order, r.out_order), (2, 1, 4));
        assert!(r.within_bound());
    }

    #[test]
    fn didicosm_stabilizer_is_full() {
        let r = out_order(&gamma_group(3).unwrap()).unwrap();
        assert_eq!(r.h1_order, 8);
        assert_eq!(r.perm_stabilizer_order, 6);
        assert_eq!(r.out_order, 96);
        assert_eq!(r.bound, 96);
    }
}
