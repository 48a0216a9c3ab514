mod common;

use std::cmp::Ordering;

use common::*;
use lsder_core::freealg::{compare_words, enumerate_reduced, normalize, RawWord, Signature, Word};
use lsder_core::{bracket, Element, Error};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn raw_tree(arity: usize, gens: usize) -> impl Strategy<Value = RawWord> {
    let leaf = (0..gens).prop_map(RawWord::Gen);
    leaf.prop_recursive(3, 24, arity as u32, move |inner| {
        prop::collection::vec(inner, arity).prop_map(RawWord::Node)
    })
}

fn signature() -> impl Strategy<Value = Signature> {
    (2usize..=3, any::<bool>(), 1usize..=2)
        .prop_map(|(m, sym, n)| Signature::new(m, sym, false, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent((sig, raw) in signature().prop_flat_map(|s| (Just(s), raw_tree(s.arity, s.num_generators)))) {
        let w = normalize(&sig, &raw).unwrap();
        prop_assert_eq!(&normalize(&sig, &RawWord::from(&w)).unwrap(), &w);
        sig.check(&w).unwrap();
    }

    #[test]
    fn bracket_symmetry_matches_signature(sig in signature(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let args: Vec<Element> = (0..sig.arity).map(|_| random_element(&mut rng, &sig, 3, 2)).collect();
        let base = bracket(&sig, &args).unwrap();
        let mut perm = args.clone();
        perm.shuffle(&mut rng);
        let permuted = bracket(&sig, &perm).unwrap();
        if sig.symmetric {
            prop_assert_eq!(permuted, base);
        } else if perm != args && args.iter().all(|a| a.num_terms() == 1) && args.iter().flat_map(|a| a.words()).collect::<std::collections::BTreeSet<_>>().len() == args.len() {
            // distinct single words in a different order give a different word
            prop_assert_ne!(permuted, base);
        }
    }

    #[test]
    fn bracket_adds_degrees(sig in signature(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let args: Vec<Element> = (0..sig.arity)
            .map(|_| {
                let e = random_element(&mut rng, &sig, 3, 3);
                e.homogeneous_components().into_values().next().unwrap()
            })
            .collect();
        let total: usize = args.iter().map(|a| a.degree().unwrap()).sum();
        let out = bracket(&sig, &args).unwrap();
        prop_assert!(out.words().all(|w| w.len() == total));
    }
}

#[test]
fn word_order_is_total_on_enumerated_sets() {
    for sig in [
        Signature::one_var_symmetric(2),
        Signature::new(2, false, false, 2).unwrap(),
        Signature::one_var_symmetric(3),
    ] {
        let words: Vec<Word> = (1..=5)
            .flat_map(|l| enumerate_reduced(&sig, l).unwrap())
            .collect();
        for a in &words {
            for b in &words {
                let ab = compare_words(&sig, a, b).unwrap();
                assert_eq!(ab, compare_words(&sig, b, a).unwrap().reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &words {
                    if ab == Ordering::Less && b < c {
                        assert!(a < c);
                    }
                }
            }
        }
    }
}

#[test]
fn word_order_examples() {
    let sig = Signature::one_var_symmetric(2);
    let x2 = sig.node(vec![Word::x(), Word::x()]).unwrap();
    assert_eq!(
        compare_words(&sig, &Word::x(), &x2).unwrap(),
        Ordering::Less
    );
    let a = sig.node(vec![x2.clone(), x2.clone()]).unwrap();
    let x2x = sig.node(vec![x2.clone(), Word::x()]).unwrap();
    let b = sig.node(vec![x2x, Word::x()]).unwrap();
    assert_eq!(compare_words(&sig, &a, &b).unwrap(), Ordering::Less);
    assert_eq!(
        compare_words(&sig, &Word::x(), &Word::x()).unwrap(),
        Ordering::Equal
    );
    let stranger = Word::gen(3);
    assert!(matches!(
        compare_words(&sig, &stranger, &Word::x()),
        Err(Error::UnknownGenerator { .. })
    ));
}

#[test]
fn ternary_normalization() {
    let sig = Signature::one_var_symmetric(3);
    let x = RawWord::Gen(0);
    let x3 = RawWord::node([x.clone(), x.clone(), x.clone()]);
    let w = normalize(&sig, &RawWord::node([x.clone(), x.clone(), x3])).unwrap();
    assert_eq!(w.to_string(), "((x1 x1 x1) x1 x1)");
    assert_eq!(normalize(&sig, &x).unwrap(), Word::x());
    let bad = RawWord::node([x.clone(), x]);
    assert_eq!(
        normalize(&sig, &bad),
        Err(Error::ArityMismatch {
            expected: 3,
            found: 2
        })
    );
}

#[test]
fn counts_agree_with_independent_recursion() {
    let sig = Signature::one_var_symmetric(2);
    let counts: Vec<u64> = (1..=9)
        .map(|l| enumerate_reduced(&sig, l).unwrap().len() as u64)
        .collect();
    assert_eq!(counts, wedderburn_etherington(9));
}
