use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shape of the free algebra: one m-ary operation on `num_generators` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub arity: usize,
    pub symmetric: bool,
    pub unital: bool,
    pub num_generators: usize,
}

impl Signature {
    pub fn new(arity: usize, symmetric: bool, unital: bool, num_generators: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidSignature(format!(
                "arity must be at least 2, got {arity}"
            )));
        }
        if unital && arity != 2 {
            return Err(Error::InvalidSignature(
                "a unit is only supported for binary algebras".into(),
            ));
        }
        if num_generators == 0 {
            return Err(Error::InvalidSignature(
                "at least one generator is required".into(),
            ));
        }
        Ok(Signature {
            arity,
            symmetric,
            unital,
            num_generators,
        })
    }

    /// Symmetric, non-unital, one generator.
    pub fn one_var_symmetric(arity: usize) -> Self {
        Signature::new(arity, true, false, 1).expect("valid arity")
    }

    pub fn with_generators(self, num_generators: usize) -> Self {
        Signature {
            num_generators,
            ..self
        }
    }

    /// Whether words of this length can exist (for m ≥ 3 only lengths ≡ 1 mod m−1).
    pub fn admits_length(&self, len: usize) -> bool {
        match len {
            0 => self.unital,
            1 => true,
            _ => (len - 1).is_multiple_of(self.arity - 1),
        }
    }

    /// Builds a canonical node from canonical children: units are absorbed and,
    /// for symmetric signatures, children are sorted non-increasingly.
    pub fn node(&self, mut children: Vec<Word>) -> Result<Word> {
        if children.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: children.len(),
            });
        }
        if self.unital {
            children.retain(|c| !c.is_unit());
            match children.len() {
                0 => return Ok(Word::Unit),
                1 => return Ok(children.pop().unwrap()),
                _ => {}
            }
        }
        if self.symmetric {
            children.sort_by(|a, b| b.cmp(a));
        }
        let len = children.iter().map(Word::len).sum();
        Ok(Word::Node(Arc::new(Node {
            len,
            children: children.into_boxed_slice(),
        })))
    }

    /// Checks that `w` is a canonical word over this signature.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w {
            Word::Unit if self.unital => Ok(()),
            Word::Unit => Err(Error::UnitNotAllowed),
            Word::Gen(i) if (*i as usize) < self.num_generators => Ok(()),
            Word::Gen(i) => Err(Error::UnknownGenerator {
                index: *i as usize + 1,
                available: self.num_generators,
            }),
            Word::Node(n) => {
                if n.children.len() != self.arity {
                    return Err(Error::ArityMismatch {
                        expected: self.arity,
                        found: n.children.len(),
                    });
                }
                for c in n.children.iter() {
                    if c.is_unit() {
                        return Err(Error::SignatureMismatch("unit appears as a child".into()));
                    }
                    self.check(c)?;
                }
                if self.symmetric && n.children.windows(2).any(|p| p[0] < p[1]) {
                    return Err(Error::SignatureMismatch("children are not sorted".into()));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Node {
    len: usize,
    children: Box<[Word]>,
}

/// A canonical nonassociative word: a generator, the unit, or an m-ary node.
///
/// Words are ordered first by length, then (for equal lengths) lexicographically
/// by children; generators are ordered by index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Unit,
    Gen(u32),
    Node(Arc<Node>),
}

impl Word {
    /// Generator with zero-based index `i`.
    pub fn gen(i: usize) -> Self {
        Word::Gen(i as u32)
    }

    pub fn x() -> Self {
        Word::Gen(0)
    }

    /// Number of leaves; the unit has length 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Word::Unit => 0,
            Word::Gen(_) => 1,
            Word::Node(n) => n.len,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Word::Unit)
    }

    pub fn children(&self) -> &[Word] {
        match self {
            Word::Node(n) => &n.children,
            _ => &[],
        }
    }

    pub fn generator_index(&self) -> Option<usize> {
        match self {
            Word::Gen(i) => Some(*i as usize),
            _ => None,
        }
    }

    /// Occurrence count of each of the first `n` generators.
    pub fn multidegree(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        self.accumulate_multidegree(&mut out);
        out
    }

    fn accumulate_multidegree(&self, out: &mut [usize]) {
        match self {
            Word::Unit => {}
            Word::Gen(i) => {
                if let Some(slot) = out.get_mut(*i as usize) {
                    *slot += 1;
                }
            }
            Word::Node(n) => n
                .children
                .iter()
                .for_each(|c| c.accumulate_multidegree(out)),
        }
    }

    /// Number of occurrences of generator `i`.
    pub fn count_generator(&self, i: usize) -> usize {
        match self {
            Word::Unit => 0,
            Word::Gen(j) => usize::from(*j as usize == i),
            Word::Node(n) => n.children.iter().map(|c| c.count_generator(i)).sum(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        match self {
            Word::Unit => None,
            Word::Gen(i) => Some(*i as usize),
            Word::Node(n) => n.children.iter().filter_map(Word::max_generator).max(),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| match (self, other) {
                (Word::Unit, Word::Unit) => Ordering::Equal,
                (Word::Gen(a), Word::Gen(b)) => a.cmp(b),
                (Word::Node(a), Word::Node(b)) => {
                    if Arc::ptr_eq(a, b) {
                        Ordering::Equal
                    } else {
                        a.children.iter().cmp(b.children.iter())
                    }
                }
                (Word::Unit, _) => Ordering::Less,
                (_, Word::Unit) => Ordering::Greater,
                (Word::Gen(_), Word::Node(_)) => Ordering::Less,
                (Word::Node(_), Word::Gen(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two words of the same signature in the word order.
pub fn compare_words(sig: &Signature, u: &Word, v: &Word) -> Result<Ordering> {
    sig.check(u)?;
    sig.check(v)?;
    Ok(u.cmp(v))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Unit => write!(f, "1"),
            Word::Gen(i) => write!(f, "x{}", i + 1),
            Word::Node(n) => {
                write!(f, "(")?;
                for (k, c) in n.children.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An unnormalized word tree, as produced by a parser or built by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawWord {
    Unit,
    Gen(usize),
    Node(Vec<RawWord>),
}

impl RawWord {
    pub fn node(children: impl IntoIterator<Item = RawWord>) -> Self {
        RawWord::Node(children.into_iter().collect())
    }
}

/// Canonical reduced form of a raw tree.
pub fn normalize(sig: &Signature, raw: &RawWord) -> Result<Word> {
    match raw {
        RawWord::Unit if sig.unital => Ok(Word::Unit),
        RawWord::Unit => Err(Error::UnitNotAllowed),
        RawWord::Gen(i) if *i < sig.num_generators => Ok(Word::gen(*i)),
        RawWord::Gen(i) => Err(Error::UnknownGenerator {
            index: i + 1,
            available: sig.num_generators,
        }),
        RawWord::Node(children) => {
            if children.len() != sig.arity {
                return Err(Error::ArityMismatch {
                    expected: sig.arity,
                    found: children.len(),
                });
            }
            let kids = children
                .iter()
                .map(|c| normalize(sig, c))
                .collect::<Result<Vec<_>>>()?;
            sig.node(kids)
        }
    }
}

impl From<&Word> for RawWord {
    fn from(w: &Word) -> Self {
        match w {
            Word::Unit => RawWord::Unit,
            Word::Gen(i) => RawWord::Gen(*i as usize),
            Word::Node(n) => RawWord::Node(n.children.iter().map(RawWord::from).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RawWord {
        RawWord::Gen(0)
    }

    #[test]
    fn normalize_sorts_children_non_increasing() {
        let sig = Signature::one_var_symmetric(2);
        let x2 = RawWord::node([x(), x()]);
        let w = normalize(&sig, &RawWord::node([x(), x2.clone()])).unwrap();
        assert_eq!(w.to_string(), "((x1 x1) x1)");

        let sig3 = Signature::one_var_symmetric(3);
        let x3 = RawWord::node([x(), x(), x()]);
        let w = normalize(&sig3, &RawWord::node([x(), x(), x3])).unwrap();
        assert_eq!(w.to_string(), "((x1 x1 x1) x1 x1)");

        assert_eq!(normalize(&sig, &x()).unwrap(), Word::x());
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_order_when_not_symmetric() {
        let sig = Signature::new(2, false, false, 1).unwrap();
        let raw = RawWord::node([x(), RawWord::node([x(), x()])]);
        let w = normalize(&sig, &raw).unwrap();
        assert_eq!(w.to_string(), "(x1 (x1 x1))");
        assert_eq!(normalize(&sig, &RawWord::from(&w)).unwrap(), w);
    }

    #[test]
    fn normalize_rejects_bad_trees() {
        let sig = Signature::one_var_symmetric(2);
        assert_eq!(
            normalize(&sig, &RawWord::node([x(), x(), x()])),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(matches!(
            normalize(&sig, &RawWord::Gen(3)),
            Err(Error::UnknownGenerator { .. })
        ));
        assert_eq!(normalize(&sig, &RawWord::Unit), Err(Error::UnitNotAllowed));
    }

    #[test]
    fn unit_is_absorbed() {
        let sig = Signature::new(2, false, true, 1).unwrap();
        let w = normalize(&sig, &RawWord::node([RawWord::Unit, x()])).unwrap();
        assert_eq!(w, Word::x());
        let w = normalize(&sig, &RawWord::node([RawWord::Unit, RawWord::Unit])).unwrap();
        assert_eq!(w, Word::Unit);
    }

    #[test]
    fn word_order_examples() {
        let sig = Signature::one_var_symmetric(2);
        let x2 = sig.node(vec![Word::x(), Word::x()]).unwrap();
        let x2x = sig.node(vec![x2.clone(), Word::x()]).unwrap();
        let x2x2 = sig.node(vec![x2.clone(), x2.clone()]).unwrap();
        let x2xx = sig.node(vec![x2x.clone(), Word::x()]).unwrap();
        assert_eq!(
            compare_words(&sig, &Word::x(), &x2).unwrap(),
            Ordering::Less
        );
        assert_eq!(compare_words(&sig, &x2x2, &x2xx).unwrap(), Ordering::Less);
        assert_eq!(
            compare_words(&sig, &Word::x(), &Word::x()).unwrap(),
            Ordering::Equal
        );
        assert!(compare_words(&sig, &Word::gen(4), &Word::x()).is_err());
    }

    #[test]
    fn lengths_and_multidegree() {
        let sig = Signature::new(2, true, false, 2).unwrap();
        let w = sig
            .node(vec![
                Word::gen(1),
                sig.node(vec![Word::gen(0), Word::gen(0)]).unwrap(),
            ])
            .unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.multidegree(2), vec![2, 1]);
        assert!(Signature::one_var_symmetric(3).admits_length(5));
        assert!(!Signature::one_var_symmetric(3).admits_length(4));
    }
}
