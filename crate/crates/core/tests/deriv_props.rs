mod common;

use common::*;
use lsder_core::freealg::Signature;
use lsder_core::{q, Derivation, DerivationAlgebra, Element, Probe};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ChaCha8Rng, Signature, DerivationAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = random_signature(&mut rng);
    (rng, sig, DerivationAlgebra::free(sig))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_symmetric_identity(seed in any::<u64>()) {
        let (mut rng, sig, alg) = setup(seed);
        let mut d = || alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        let (u, v, w) = (d(), d(), d());
        let m = |a: &Derivation, b: &Derivation| alg.lsym_mul(a, b).unwrap();
        let lhs = &m(&m(&u, &v), &w) - &m(&u, &m(&v, &w));
        let rhs = &m(&m(&v, &u), &w) - &m(&v, &m(&u, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_is_composition_bracket(seed in any::<u64>()) {
        let (mut rng, sig, alg) = setup(seed);
        let u = alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        let v = alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        let a = random_element(&mut rng, &sig, 3, 3);
        let c = alg.commutator(&u, &v).unwrap();
        let uva = alg.apply(&u, &alg.apply(&v, &a).unwrap()).unwrap();
        let vua = alg.apply(&v, &alg.apply(&u, &a).unwrap()).unwrap();
        prop_assert_eq!(alg.apply(&c, &a).unwrap(), &uva - &vua);
    }

    #[test]
    fn identity_derivation_is_a_right_identity(seed in any::<u64>()) {
        let (mut rng, sig, alg) = setup(seed);
        let d = alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        prop_assert_eq!(alg.lsym_mul(&d, &alg.identity_derivation()).unwrap(), d);
    }

    #[test]
    fn grading_is_compatible(seed in any::<u64>()) {
        let (mut rng, sig, alg) = setup(seed);
        let u = alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        let v = alg.derivation(random_tuple(&mut rng, &sig, 3)).unwrap();
        let total: Derivation = alg
            .grading_decompose(&u)
            .values()
            .fold(alg.zero(), |acc, c| &acc + c);
        prop_assert_eq!(&total, &u);
        for (s, a) in alg.grading_decompose(&u) {
            for (t, b) in alg.grading_decompose(&v) {
                let prod = alg.lsym_mul(&a, &b).unwrap();
                for (r, _) in alg.grading_decompose(&prod) {
                    prop_assert_eq!(r, s + t);
                }
            }
        }
    }

    #[test]
    fn left_nilpotency_matches_local_nilpotency(seed in any::<u64>()) {
        // strictly triangular derivations x_2-free in the first coordinate are nilpotent
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = Signature::new(2, true, false, 2).unwrap();
        let alg = DerivationAlgebra::free(sig);
        let one_var = Signature::one_var_symmetric(2);
        let f = random_element(&mut rng, &one_var, 3, 2);
        let shifted = Element::from_terms(f.terms().map(|(w, c)| (rename(&sig, w), c.clone())));
        let d = alg.derivation(vec![shifted, Element::zero()]).unwrap();
        let bound = 6;
        let probe = alg.is_left_nilpotent(&d, bound).unwrap();
        let local = (1..=bound).find(|&r| {
            (0..2).all(|i| alg.apply_iterated(&d, r, &Element::generator(i)).unwrap().is_zero())
        });
        prop_assert_eq!(probe.index(), local);
    }
}

/// Sends `x1` to `x2` in a one-generator word.
fn rename(sig: &Signature, w: &lsder_core::Word) -> lsder_core::Word {
    use lsder_core::Word;
    match w {
        Word::Gen(_) => Word::gen(1),
        Word::Node(_) => sig
            .node(w.children().iter().map(|c| rename(sig, c)).collect())
            .unwrap(),
        Word::Unit => Word::Unit,
    }
}

#[test]
fn no_two_sided_identity() {
    let sig = Signature::one_var_symmetric(2);
    let alg = DerivationAlgebra::free(sig);
    let x2 = b2(&sig, &x(), &x());
    let d = alg.derivation(vec![x2]).unwrap();
    let left = alg.lsym_mul(&alg.identity_derivation(), &d).unwrap();
    assert_ne!(left, d);
    assert_eq!(left, d.scale(&q(2)));
}

#[test]
fn degree_zero_part_is_a_matrix_algebra() {
    for n in 2..=3 {
        let sig = Signature::new(2, true, false, n).unwrap();
        let alg = DerivationAlgebra::free(sig);
        let unit = |j: usize, i: usize| alg.monomial(Element::generator(j), i).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let prod = alg.lsym_mul(&unit(j, i), &unit(l, k)).unwrap();
                        let expected = if i == l { unit(j, k) } else { alg.zero() };
                        assert_eq!(
                            prod,
                            expected,
                            "(x{} d{})(x{} d{})",
                            j + 1,
                            i + 1,
                            l + 1,
                            k + 1
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn nilpotency_probes() {
    let sig = Signature::one_var_symmetric(2);
    let alg = DerivationAlgebra::free(sig);
    let id = alg.identity_derivation();
    assert_eq!(
        alg.is_right_nilpotent(&id, 5).unwrap(),
        Probe::Absent { bound: 5 }
    );
    let d = alg.derivation(vec![b2(&sig, &x(), &x())]).unwrap();
    let commutator = alg.commutator(&id, &d).unwrap();
    assert_eq!(commutator, d);
    assert!(alg.commutator(&d, &d).unwrap().is_zero());
    assert_eq!(alg.left_power(&d, 1).unwrap(), d);
}
