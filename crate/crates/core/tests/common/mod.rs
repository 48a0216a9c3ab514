#![allow(dead_code)]

use lsder_core::freealg::{enumerate_reduced, Element, Signature, Word};
use lsder_core::{bracket, q};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random nonzero element with up to `terms` words of length `1..=max_len` and small
/// nonzero integer coefficients.
pub fn random_element(
    rng: &mut impl Rng,
    sig: &Signature,
    max_len: usize,
    terms: usize,
) -> Element {
    let pool: Vec<Word> = (1..=max_len)
        .flat_map(|l| enumerate_reduced(sig, l).unwrap())
        .collect();
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let w = pool.choose(rng).unwrap().clone();
        let mut c = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        e.add_term(w, q(c));
    }
    if e.is_zero() {
        // opposite coefficients on a repeated word cancelled
        return random_element(rng, sig, max_len, terms);
    }
    e
}

pub fn random_tuple(rng: &mut impl Rng, sig: &Signature, max_len: usize) -> Vec<Element> {
    (0..sig.num_generators)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Element::zero()
            } else {
                random_element(rng, sig, max_len, 3)
            }
        })
        .collect()
}

/// Symmetric signatures with arity in {2, 3} and one or two generators.
pub fn random_signature(rng: &mut impl Rng) -> Signature {
    let arity = if rng.gen_bool(0.5) { 2 } else { 3 };
    let n = rng.gen_range(1..=2);
    Signature::new(arity, true, false, n).unwrap()
}

pub fn x() -> Element {
    Element::generator(0)
}

pub fn b2(sig: &Signature, a: &Element, c: &Element) -> Element {
    bracket(sig, &[a.clone(), c.clone()]).unwrap()
}

/// Unordered binary tree counts by the multiset recursion, independent of any enumeration.
pub fn wedderburn_etherington(max: usize) -> Vec<u64> {
    let mut a = vec![0u64; max + 1];
    if max >= 1 {
        a[1] = 1;
    }
    for n in 2..=max {
        let mut s = 0;
        for i in 1..=(n - 1) / 2 {
            s += a[i] * a[n - i];
        }
        if n % 2 == 0 {
            let h = a[n / 2];
            s += h * (h + 1) / 2;
        }
        a[n] = s;
    }
    a[1..].to_vec()
}
