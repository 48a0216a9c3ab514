use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use super::word::{Signature, Word};
use crate::error::{Error, Result};

pub type Multidegree = Vec<usize>;

/// Memoized table of canonical words per multidegree.
#[derive(Debug)]
pub struct WordCache {
    sig: Signature,
    table: Mutex<HashMap<Multidegree, Arc<Vec<Word>>>>,
}

impl WordCache {
    pub fn new(sig: Signature) -> Self {
        WordCache {
            sig,
            table: Mutex::new(HashMap::new()),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// All canonical words of multidegree `alpha`, ascending in the word order.
    pub fn words(&self, alpha: &[usize]) -> Arc<Vec<Word>> {
        if let Some(hit) = self.table.lock().unwrap().get(alpha) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute(alpha));
        self.table
            .lock()
            .unwrap()
            .insert(alpha.to_vec(), computed.clone());
        computed
    }

    fn compute(&self, alpha: &[usize]) -> Vec<Word> {
        let sig = &self.sig;
        let total: usize = alpha.iter().sum();
        if total == 0 {
            return if sig.unital { vec![Word::Unit] } else { vec![] };
        }
        if total == 1 {
            let i = alpha.iter().position(|&d| d == 1).unwrap();
            return vec![Word::gen(i)];
        }
        if !sig.admits_length(total) {
            return vec![];
        }
        let mut out = Vec::new();
        for parts in ordered_splits(sig, alpha, sig.arity) {
            let lens: Vec<usize> = parts.iter().map(|p| p.iter().sum()).collect();
            if sig.symmetric && lens.windows(2).any(|l| l[0] < l[1]) {
                continue;
            }
            let lists: Vec<Arc<Vec<Word>>> = parts.iter().map(|p| self.words(p)).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            for children in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
                if sig.symmetric && children.windows(2).any(|c| c[0] < c[1]) {
                    continue;
                }
                let kids = children.into_iter().cloned().collect();
                out.push(sig.node(kids).expect("arity matches"));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Ordered splits of `alpha` into `parts` nonzero multidegrees of admissible length.
fn ordered_splits(sig: &Signature, alpha: &[usize], parts: usize) -> Vec<Vec<Multidegree>> {
    let total: usize = alpha.iter().sum();
    if parts == 1 {
        return if total >= 1 && sig.admits_length(total) {
            vec![vec![alpha.to_vec()]]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    for first in sub_multidegrees(alpha) {
        let t: usize = first.iter().sum();
        if t == 0 || !sig.admits_length(t) || total - t < parts - 1 {
            continue;
        }
        let rest: Vec<usize> = alpha.iter().zip(&first).map(|(a, b)| a - b).collect();
        for mut tail in ordered_splits(sig, &rest, parts - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// All vectors `beta` with `0 <= beta <= alpha` componentwise.
pub fn sub_multidegrees(alpha: &[usize]) -> Vec<Multidegree> {
    alpha
        .iter()
        .map(|&a| 0..=a)
        .multi_cartesian_product()
        .collect()
}

/// All multidegrees over `n` generators of the given total.
pub fn multidegrees_of_total(n: usize, total: usize) -> Vec<Multidegree> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in multidegrees_of_total(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All canonical words of the given length, sorted in the word order.
///
/// Lengths not admitted by the arity give an empty list; length 0 is only
/// admitted for unital signatures.
pub fn enumerate_reduced(sig: &Signature, length: usize) -> Result<Vec<Word>> {
    if length == 0 && !sig.unital {
        return Err(Error::InvalidArgument(
            "length 0 requires a unital signature".into(),
        ));
    }
    let cache = WordCache::new(*sig);
    Ok(enumerate_with(&cache, length))
}

pub fn enumerate_with(cache: &WordCache, length: usize) -> Vec<Word> {
    let n = cache.signature().num_generators;
    let mut out: Vec<Word> = multidegrees_of_total(n, length)
        .into_iter()
        .flat_map(|alpha| cache.words(&alpha).as_ref().clone())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_symmetric_counts() {
        let sig = Signature::one_var_symmetric(2);
        let counts: Vec<usize> = (1..=8)
            .map(|l| enumerate_reduced(&sig, l).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        let four = enumerate_reduced(&sig, 4).unwrap();
        let shown: Vec<String> = four.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["((x1 x1) (x1 x1))", "(((x1 x1) x1) x1)"]);
    }

    #[test]
    fn ternary_counts_and_gaps() {
        let sig = Signature::one_var_symmetric(3);
        assert_eq!(enumerate_reduced(&sig, 7).unwrap().len(), 2);
        assert!(enumerate_reduced(&sig, 4).unwrap().is_empty());
        assert_eq!(enumerate_reduced(&sig, 3).unwrap().len(), 1);
    }

    #[test]
    fn nonsymmetric_binary_counts_are_catalan() {
        let sig = Signature::new(2, false, false, 1).unwrap();
        let counts: Vec<usize> = (1..=6)
            .map(|l| enumerate_reduced(&sig, l).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn two_generator_words_are_sorted_and_canonical() {
        let sig = Signature::new(2, true, false, 2).unwrap();
        let words = enumerate_reduced(&sig, 3).unwrap();
        // unordered pairs of (length-2 word, generator): 3 * 2
        assert_eq!(words.len(), 6);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        for w in &words {
            sig.check(w).unwrap();
        }
    }

    #[test]
    fn unital_length_zero() {
        let sig = Signature::new(2, true, true, 1).unwrap();
        assert_eq!(enumerate_reduced(&sig, 0).unwrap(), vec![Word::Unit]);
        assert!(enumerate_reduced(&Signature::one_var_symmetric(2), 0).is_err());
    }
}
