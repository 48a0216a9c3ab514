use lsder_cli::parse::{parse_derivation, parse_element};
use lsder_core::freealg::normalize;
use lsder_core::{frac, DerivationAlgebra, Element, RawWord, Signature};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_signature(rng: &mut impl Rng) -> Signature {
    let arity = rng.gen_range(2..=3);
    let unital = arity == 2 && rng.gen_bool(0.3);
    Signature::new(arity, rng.gen_bool(0.5), unital, rng.gen_range(1..=3)).unwrap()
}

fn random_raw(rng: &mut impl Rng, sig: &Signature, depth: usize) -> RawWord {
    if depth == 0 || rng.gen_bool(0.4) {
        if sig.unital && rng.gen_bool(0.15) {
            RawWord::Unit
        } else {
            RawWord::Gen(rng.gen_range(0..sig.num_generators))
        }
    } else {
        RawWord::Node(
            (0..sig.arity)
                .map(|_| random_raw(rng, sig, depth - 1))
                .collect(),
        )
    }
}

fn random_element(rng: &mut impl Rng, sig: &Signature) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let w = normalize(sig, &random_raw(rng, sig, 3)).unwrap();
        e.add_term(w, frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = random_signature(&mut rng);
        let e = random_element(&mut rng, &sig);
        let text = e.to_string();
        prop_assert_eq!(parse_element(&text, &sig).unwrap(), e, "{}", text);
    }

    #[test]
    fn derivations_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = random_signature(&mut rng);
        let alg = DerivationAlgebra::free(sig);
        let coords: Vec<Element> = (0..sig.num_generators).map(|_| random_element(&mut rng, &sig)).collect();
        let d = alg.derivation(coords.clone()).unwrap();
        let distributed = d.to_string();
        prop_assert_eq!(&parse_derivation(&distributed, &sig).unwrap(), &coords, "{}", distributed);
        let bracketed = format!(
            "D[{}]",
            coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        );
        prop_assert_eq!(&parse_derivation(&bracketed, &sig).unwrap(), &coords);
    }
}
