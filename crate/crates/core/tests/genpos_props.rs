use lsder_core::freealg::{enumerate_reduced, Signature};
use lsder_core::genpos::{closure, rho, span_check, Prover};
use lsder_core::{bracket, q, Derivation, DerivationAlgebra, Element, Word, Q};
use std::collections::BTreeMap;

#[test]
fn certificates_evaluate_to_their_targets() {
    for (m, max_len) in [(2, 7), (3, 9)] {
        let sig = Signature::one_var_symmetric(m);
        let mut prover = Prover::new(m).unwrap();
        for len in 2..=max_len {
            for w in enumerate_reduced(&sig, len).unwrap() {
                let cert = prover.certificate(&w).unwrap();
                assert_eq!(cert.target, w);
            }
        }
    }
}

#[test]
fn induction_measure_decreases() {
    for (m, max_len) in [(2, 7), (3, 9)] {
        let sig = Signature::one_var_symmetric(m);
        let mut prover = Prover::new(m).unwrap();
        let measure = |w: &lsder_core::Word| {
            (
                w.len(),
                if w.len() > 1 {
                    rho(w).unwrap().unwrap_or(0)
                } else {
                    0
                },
            )
        };
        for len in 2..=max_len {
            for w in enumerate_reduced(&sig, len).unwrap() {
                let cert = prover.certificate(&w).unwrap();
                let Some(step) = cert.step else { continue };
                assert_eq!(step.observed_coefficient, q((m - step.rho + 1) as i64));
                let here = measure(&w);
                assert!(measure(&step.factors.0) < here);
                assert!(measure(&step.factors.1) < here);
                for (t, _) in &step.corrections {
                    assert!(measure(t) < here, "{t} after {w}");
                }
            }
        }
    }
}

#[test]
fn closure_stays_inside_each_degree() {
    for m in [2, 3] {
        let report = span_check(if m == 2 { 5 } else { 6 }, m).unwrap();
        for row in &report.rows {
            assert!(row.closure_dimension <= row.reduced_words);
        }
    }
    let prover = Prover::new(2).unwrap();
    let only_seed = closure(2, &[prover.seed()], 5).unwrap();
    let expected: Vec<usize> = (0..=5).map(bracketing_rank).collect();
    assert_eq!(expected, vec![0, 1, 1, 2, 3, 6]);
    assert_eq!(only_seed.dimensions(&[0, 1, 2, 3, 4, 5]), expected);
}

/// Rank of all bracketings of `s` copies of `x^2 d`, computed directly in the derivation algebra.
fn bracketing_rank(s: usize) -> usize {
    let sig = Signature::one_var_symmetric(2);
    let alg = DerivationAlgebra::free(sig);
    let x = Element::generator(0);
    let d = alg
        .derivation(vec![bracket(&sig, &[x.clone(), x]).unwrap()])
        .unwrap();
    let mut products: Vec<Vec<Derivation>> = vec![vec![], vec![d]];
    for k in 2..=s {
        let mut level = Vec::new();
        for a in 1..k {
            for u in &products[a] {
                for v in &products[k - a] {
                    level.push(alg.lsym_mul(u, v).unwrap());
                }
            }
        }
        products.push(level);
    }
    let rows: Vec<BTreeMap<Word, Q>> = products
        .get(s)
        .map(|l| {
            l.iter()
                .map(|d| {
                    d.coord(0)
                        .terms()
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default();
    rank(rows)
}

fn rank(mut rows: Vec<BTreeMap<Word, Q>>) -> usize {
    let mut r = 0;
    while let Some(i) = rows.iter().position(|row| !row.is_empty()) {
        let pivot = rows.swap_remove(i);
        let (pw, pc) = pivot
            .iter()
            .next()
            .map(|(w, c)| (w.clone(), c.clone()))
            .unwrap();
        for row in &mut rows {
            if let Some(c) = row.get(&pw).cloned() {
                let f = c / &pc;
                for (w, v) in &pivot {
                    let e = row.entry(w.clone()).or_insert_with(|| q(0));
                    *e -= &f * v;
                }
                row.retain(|_, v| *v != q(0));
            }
        }
        r += 1;
    }
    r
}
