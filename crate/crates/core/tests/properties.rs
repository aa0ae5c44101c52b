mod common;

use common::{census, check_smith_normal_form, scramble};
use ghw_core::literal::{format_group, parse_group};
use ghw_core::{canonical_key, DiagonalGroup, Generator};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn keys_survive_random_scrambles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6877);
    for n in 2..=5 {
        for e in &census(n).entries {
            for _ in 0..1000 {
                let q = scramble(&e.presentation, &mut rng);
                assert_eq!(canonical_key(&q), e.key);
            }
        }
    }
}

#[test]
fn census_keys_are_distinct_and_sorted() {
    for n in 2..=5 {
        let keys: Vec<_> = census(n).entries.iter().map(|e| e.key.clone()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn smith_normal_form_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        if let Err(msg) = check_smith_normal_form(&data) {
            panic!("{msg} for {data:?}");
        }
    }
}

fn arb_group() -> impl Strategy<Value = DiagonalGroup> {
    (1usize..=8).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        prop::collection::vec((0..=full, 0..=full), 1..=n)
            .prop_map(move |gens| DiagonalGroup::new(n, gens.into_iter().map(|(f, h)| Generator::new(f, h)).collect()))
    })
}

proptest! {
    #[test]
    fn literal_round_trip(group in arb_group()) {
        let text = format_group(&group);
        let parsed = parse_group(&text).unwrap();
        prop_assert_eq!(&parsed, &group);
        prop_assert_eq!(format_group(&parsed), text);
    }

    #[test]
    fn key_hex_round_trip(idx in 0usize..123) {
        let key = &census(5).entries[idx].key;
        let parsed = ghw_core::CanonicalKey::from_hex(&key.to_hex());
        prop_assert_eq!(parsed.as_ref(), Some(key));
    }
}
