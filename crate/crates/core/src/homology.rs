//! Rational homology from invariants of exterior powers of the holonomy
//! representation.
//!
//! `dim H_j(M, Q) = dim [Lambda^j Q^n]^H = (1/|H|) sum_{g in H} e_j(d(g))`,
//! where `d(g)` is the `±1` diagonal of `g` and `e_j` the elementary symmetric
//! polynomial. All `e_j(d(g))` come out of one expansion of
//! `prod_i (1 + d_i t)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GhwPresentation;

/// Betti numbers `beta_0, .., beta_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// `(1, 0, .., 0, 1)`.
    pub fn is_sphere_like(&self) -> bool {
        let n = self.dim();
        self.0.iter().enumerate().all(|(j, &b)| b == u64::from(j == 0 || j == n))
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (j, b) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

/// Coefficients of `prod_i (1 + d_i t)` for the diagonal of `flips`.
fn elementary_symmetric(flips: u64, n: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    for i in 0..n {
        let d = if flips >> i & 1 == 1 { -1 } else { 1 };
        for j in (1..=i + 1).rev() {
            coeffs[j] += d * coeffs[j - 1];
        }
    }
    coeffs
}

fn character_sums(p: &GhwPresentation) -> Vec<i64> {
    let n = p.dim();
    let mut sums = vec![0i64; n + 1];
    for g in p.elements() {
        for (s, e) in sums.iter_mut().zip(elementary_symmetric(g.sign.0, n)) {
            *s += e;
        }
    }
    sums
}

fn invariant_dim(sum: i64, order: i64) -> u64 {
    assert!(sum % order == 0 && sum >= 0, "character sum {sum} is not a non-negative multiple of |H| = {order}");
    (sum / order) as u64
}

/// Dimension of the `H`-invariants in `Lambda^j Q^n`, `0 <= j <= n`.
pub fn exterior_invariant_dim(p: &GhwPresentation, j: usize) -> u64 {
    assert!(j <= p.dim(), "exterior degree {j} exceeds dimension {}", p.dim());
    let sums = character_sums(p);
    invariant_dim(sums[j], p.elements().len() as i64)
}

pub fn betti_vector(p: &GhwPresentation) -> BettiVector {
    let order = p.elements().len() as i64;
    BettiVector(character_sums(p).into_iter().map(|s| invariant_dim(s, order)).collect())
}

pub fn is_rational_homology_sphere(p: &GhwPresentation) -> bool {
    betti_vector(p).is_sphere_like()
}
