mod common;

use common::{brute_force_stabilizer, census, invariant_monomials};
use ghw_core::literal::parse_group;
use ghw_core::{
    betti_vector, exterior_invariant_dim, gamma_group, h1_closed_form, h1_order, is_rational_homology_sphere,
    klein_group, normalizer_stabilizer_order, out_order, GhwPresentation,
};

fn didicosm() -> GhwPresentation {
    GhwPresentation::try_from(parse_group(common::DIDICOSM).unwrap()).unwrap()
}

#[test]
fn betti_numbers_match_monomial_count() {
    for n in 2..=5 {
        for e in &census(n).entries {
            for j in 0..=n {
                assert_eq!(e.betti.as_slice()[j], invariant_monomials(&e.presentation, j));
            }
            assert_eq!(e.betti.as_slice()[1] as usize, e.beta1);
            assert_eq!(e.betti.euler_characteristic(), 0);
            assert_eq!(e.betti.as_slice()[n] == 1, e.orientable);
        }
    }
}

#[test]
fn orientable_entries_satisfy_duality() {
    for n in [3, 5] {
        let hw: Vec<_> = census(n).entries.iter().filter(|e| e.orientable).collect();
        assert!(!hw.is_empty());
        for e in hw {
            let b = e.betti.as_slice();
            assert!((0..=n).all(|j| b[j] == b[n - j]));
            assert!(is_rational_homology_sphere(&e.presentation));
        }
    }
}

#[test]
fn betti_vector_is_concentrated_in_degrees_zero_and_support_size() {
    let mut middle_degree_classes = 0;
    for n in 2..=5 {
        for e in &census(n).entries {
            let k = e.key.support_size();
            for (j, &b) in e.betti.as_slice().iter().enumerate() {
                assert_eq!(b, u64::from(j == 0 || j == k));
            }
            if (2..n.saturating_sub(1)).any(|j| e.betti.as_slice()[j] != 0) {
                middle_degree_classes += 1;
            }
        }
    }
    // Classes with |S| = 3 in dimension 5 have b_3 = 1.
    eprintln!("classes with a middle-degree Betti number, dims 2-5: {middle_degree_classes}");
    assert_eq!(middle_degree_classes, 21);
}

#[test]
fn family_betti_vectors() {
    for n in 2..=8 {
        let mut expected = vec![0u64; n + 1];
        expected[0] = 1;
        expected[1] = 1;
        assert_eq!(betti_vector(&klein_group(n).unwrap()).as_slice(), &expected[..]);
        let mut expected = vec![0u64; n + 1];
        expected[0] = 1;
        expected[if n % 2 == 1 { n } else { n - 1 }] = 1;
        assert_eq!(betti_vector(&gamma_group(n).unwrap()).as_slice(), &expected[..]);
    }
    assert_eq!(exterior_invariant_dim(&gamma_group(4).unwrap(), 2), 0);
    assert_eq!(exterior_invariant_dim(&didicosm(), 0), 1);
}

#[test]
fn h1_smith_path_matches_closed_form() {
    for n in 2..=5 {
        for e in &census(n).entries {
            let expected = 1u64 << (n - e.beta1);
            assert_eq!(h1_order(&e.presentation).unwrap(), expected);
            assert_eq!(h1_closed_form(&e.presentation), expected);
            assert_eq!(e.h1_order, expected);
        }
    }
}

#[test]
fn stabilizer_matches_brute_force() {
    assert_eq!(normalizer_stabilizer_order(&didicosm()), brute_force_stabilizer(&didicosm()));
    for n in 2..=4 {
        for e in &census(n).entries {
            assert_eq!(normalizer_stabilizer_order(&e.presentation), brute_force_stabilizer(&e.presentation));
        }
    }
}

#[test]
fn out_orders() {
    for n in 2..=6 {
        let k = klein_group(n).unwrap();
        assert_eq!(normalizer_stabilizer_order(&k), 1);
        assert_eq!(out_order(&k).unwrap().out_order, 1 << n);
    }
    let d = out_order(&didicosm()).unwrap();
    assert_eq!(d.out_order, 8 * 2 * brute_force_stabilizer(&didicosm()));
    for n in 2..=5 {
        for e in &census(n).entries {
            let r = out_order(&e.presentation).unwrap();
            assert!(r.within_bound(), "{} exceeds {}", r.out_order, r.bound);
            assert_eq!(r.out_order, r.h1_order * 2 * r.perm_stabilizer_order);
            assert_eq!(e.out_order, r.out_order);
        }
    }
}
