use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::word::{Signature, Word};
use crate::error::{Error, Result};
use crate::Q;

/// A finite rational combination of canonical words. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Word, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn word(w: Word) -> Self {
        Element::term(Q::one(), w)
    }

    pub fn term(c: Q, w: Word) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn generator(i: usize) -> Self {
        Element::word(Word::gen(i))
    }

    pub fn unit() -> Self {
        Element::word(Word::Unit)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending word order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Word, &Q)> + ExactSizeIterator + Clone {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Q)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Largest word length present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Splits into homogeneous components keyed by word length.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, Element> {
        let mut out: BTreeMap<usize, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Splits into multihomogeneous components over the first `n` generators.
    pub fn multihomogeneous_components(&self, n: usize) -> BTreeMap<Vec<usize>, Element> {
        let mut out: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree(n))
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.terms.keys().try_for_each(|w| sig.check(w))
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Self {
        Element::word(w)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for &Q {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Self {
        iter.fold(Element::zero(), |acc, e| acc + e)
    }
}

/// The m-ary product, expanded multilinearly and normalized.
pub fn bracket(sig: &Signature, args: &[Element]) -> Result<Element> {
    if args.len() != sig.arity {
        return Err(Error::WrongArgumentCount {
            expected: sig.arity,
            found: args.len(),
        });
    }
    let mut out = Element::zero();
    if args.iter().any(Element::is_zero) {
        return Ok(out);
    }
    for combo in args.iter().map(|a| a.terms()).multi_cartesian_product() {
        let mut coeff = Q::one();
        let mut children = Vec::with_capacity(combo.len());
        for (w, c) in combo {
            coeff *= c;
            children.push(w.clone());
        }
        out.add_term(sig.node(children)?, coeff);
    }
    Ok(out)
}

/// Image of a word under the homomorphism sending generator `i` to `assignment[i]`.
pub fn substitute_word(sig: &Signature, w: &Word, assignment: &[Element]) -> Result<Element> {
    match w {
        Word::Unit => Ok(Element::unit()),
        Word::Gen(i) => assignment
            .get(*i as usize)
            .cloned()
            .ok_or(Error::UnassignedVariable(*i as usize + 1)),
        Word::Node(_) => {
            let kids = w
                .children()
                .iter()
                .map(|c| substitute_word(sig, c, assignment))
                .collect::<Result<Vec<_>>>()?;
            bracket(sig, &kids)
        }
    }
}

/// Homomorphic image of `template` (whose generators are read as variables
/// indexing `assignment`), renormalized in `sig`.
pub fn substitute(sig: &Signature, template: &Element, assignment: &[Element]) -> Result<Element> {
    let mut out = Element::zero();
    for (w, c) in template.terms() {
        out += &substitute_word(sig, w, assignment)?.scale(c);
    }
    Ok(out)
}

pub(crate) fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Q,
    body: &dyn fmt::Display,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if abs.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{abs}*{body}")
    }
}

impl fmt::Display for Element {
    /// Terms are printed from the largest word down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            fmt_coeff_term(f, k == 0, c, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
