use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::identity::{multilinearize, Identity};
use crate::error::{Error, Result};
use crate::freealg::{
    bracket, multidegrees_of_total, sub_multidegrees, substitute, Element, Multidegree, Signature,
    Word, WordCache,
};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::probe::Probe;
use crate::q;

/// How relation instances of the defining identities are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generation {
    /// Substitute words into the full multilinearization of each identity.
    Multilinear,
    /// Evaluate each identity as given at random integer combinations of words,
    /// until the rank of every component stops growing for `patience` samples.
    Sampled { seed: u64, patience: usize },
}

/// A variety of m-ary algebras: a signature (its generator count is the rank of
/// the relatively free algebra) and defining identities.
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    pub signature: Signature,
    pub identities: Vec<Identity>,
    pub generation: Generation,
}

impl VarietyPresentation {
    pub fn new(signature: Signature, identities: Vec<Identity>) -> Self {
        VarietyPresentation {
            signature,
            identities,
            generation: Generation::Multilinear,
        }
    }

    pub fn free(signature: Signature) -> Self {
        VarietyPresentation::new(signature, vec![])
    }

    pub fn with_generation(mut self, generation: Generation) -> Self {
        self.generation = generation;
        self
    }

    /// Same identities, relatively free algebra on `n` generators.
    pub fn with_generators(&self, n: usize) -> Self {
        VarietyPresentation {
            signature: self.signature.with_generators(n),
            ..self.clone()
        }
    }
}

/// Truncation used when none is given: 8 for binary, `4(m−1)+1` otherwise.
pub fn default_truncation(arity: usize) -> usize {
    if arity == 2 {
        8
    } else {
        4 * (arity - 1) + 1
    }
}

/// One multihomogeneous component of the relatively free algebra.
#[derive(Debug)]
struct Component {
    words: Arc<Vec<Word>>,
    index: HashMap<Word, usize>,
    relations: Echelon,
}

impl Component {
    fn to_row(&self, e: &Element) -> SparseRow {
        e.terms().map(|(w, c)| (self.index[w], c.clone())).collect()
    }

    fn to_element(&self, row: &SparseRow) -> Element {
        Element::from_terms(row.iter().map(|(c, v)| (self.words[*c].clone(), v.clone())))
    }

    fn basis(&self) -> Vec<Word> {
        self.relations
            .non_pivots()
            .into_iter()
            .map(|c| self.words[c].clone())
            .collect()
    }

    fn relation_elements(&self) -> Vec<Element> {
        self.relations
            .rows()
            .map(|(_, r)| self.to_element(r))
            .collect()
    }

    /// Normal form of a single word: pivot words are rewritten through their relation.
    fn reduce_word(&self, w: &Word, c: &crate::Q, out: &mut Element) {
        let col = self.index[w];
        match self.relations.row(col) {
            None => out.add_term(w.clone(), c.clone()),
            Some(row) => {
                for (k, v) in row.iter().filter(|(k, _)| **k != col) {
                    out.add_term(self.words[*k].clone(), -(c * v));
                }
            }
        }
    }
}

/// The relatively free algebra of a variety, computed degree by degree up to a
/// truncation bound.
///
/// Each multihomogeneous component holds a reduced echelon basis of the
/// T-ideal restricted to it. Pivots are the smallest words of each relation, so
/// the surviving basis words are the largest ones. Components are computed on
/// first use and memoized.
#[derive(Debug)]
pub struct QuotientSpace {
    presentation: VarietyPresentation,
    truncation: usize,
    multilinear: Vec<Identity>,
    words: WordCache,
    components: Mutex<HashMap<Multidegree, Arc<Component>>>,
}

impl QuotientSpace {
    pub fn new(presentation: VarietyPresentation, truncation: usize) -> Result<Self> {
        let sig = presentation.signature;
        let mut multilinear = Vec::new();
        for id in &presentation.identities {
            for v in id.polynomial().words() {
                if let Some(g) = v.max_generator() {
                    if g >= id.num_vars() {
                        return Err(Error::UnknownGenerator {
                            index: g + 1,
                            available: id.num_vars(),
                        });
                    }
                }
                sig.with_generators(id.num_vars()).check(v)?;
            }
            multilinear.extend(multilinearize(&sig, id)?);
        }
        Ok(QuotientSpace {
            words: WordCache::new(sig),
            presentation,
            truncation,
            multilinear,
            components: Mutex::default(),
        })
    }

    pub fn with_default_truncation(presentation: VarietyPresentation) -> Result<Self> {
        let t = default_truncation(presentation.signature.arity);
        QuotientSpace::new(presentation, t)
    }

    pub fn presentation(&self) -> &VarietyPresentation {
        &self.presentation
    }

    pub fn signature(&self) -> &Signature {
        &self.presentation.signature
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Multilinearized defining identities actually used to generate relations.
    pub fn multilinear_identities(&self) -> &[Identity] {
        &self.multilinear
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.truncation {
            Err(Error::TruncationExceeded {
                degree,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    fn component(&self, alpha: &[usize]) -> Arc<Component> {
        if let Some(hit) = self.components.lock().unwrap().get(alpha) {
            return hit.clone();
        }
        let built = Arc::new(self.build_component(alpha));
        self.components
            .lock()
            .unwrap()
            .insert(alpha.to_vec(), built.clone());
        built
    }

    fn build_component(&self, alpha: &[usize]) -> Component {
        let words = self.words.words(alpha);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut comp = Component {
            relations: Echelon::new(words.len()),
            words,
            index,
        };
        if comp.words.is_empty() {
            return comp;
        }
        match self.presentation.generation {
            Generation::Multilinear => self.add_multilinear_instances(alpha, &mut comp),
            Generation::Sampled { seed, patience } => {
                self.add_sampled_instances(alpha, &mut comp, seed, patience)
            }
        }
        self.add_ideal_closure(alpha, &mut comp);
        comp
    }

    fn insert(&self, comp: &mut Component, e: &Element) {
        if !e.is_zero() {
            let row = comp.to_row(e);
            comp.relations.insert(row);
        }
    }

    /// Substitution instances `f(w_1, …, w_t)` of the multilinear identities.
    ///
    /// Lower-degree arguments range over quotient basis words only: replacing an
    /// argument by its normal form changes the instance by an element of the
    /// ideal generated by lower relations, which the closure step supplies.
    fn add_multilinear_instances(&self, alpha: &[usize], comp: &mut Component) {
        let sig = self.signature();
        let total: usize = alpha.iter().sum();
        for id in &self.multilinear {
            let poly = id.polynomial();
            for parts in self.splits(alpha, id.num_vars(), sig.unital) {
                let lists: Vec<Arc<Vec<Word>>> = parts
                    .iter()
                    .map(|p| {
                        if p.iter().sum::<usize>() < total {
                            Arc::new(self.component(p).basis())
                        } else {
                            self.words.words(p)
                        }
                    })
                    .collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                for choice in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
                    if comp.relations.is_full() {
                        return;
                    }
                    let assignment: Vec<Element> = choice
                        .into_iter()
                        .map(|w| Element::word(w.clone()))
                        .collect();
                    let inst =
                        substitute(sig, &poly, &assignment).expect("instances stay in signature");
                    self.insert(comp, &inst);
                }
            }
        }
    }

    fn add_sampled_instances(
        &self,
        alpha: &[usize],
        comp: &mut Component,
        seed: u64,
        patience: usize,
    ) {
        let sig = self.signature();
        let n = sig.num_generators;
        let total: usize = alpha.iter().sum();
        let mut rng = ChaCha8Rng::seed_from_u64(alpha.iter().fold(seed, |h, &a| {
            h.wrapping_mul(1_000_003).wrapping_add(a as u64)
        }));
        for id in &self.presentation.identities {
            let Ok(degrees) = id.var_degrees() else {
                continue;
            };
            let deg: usize = degrees.iter().sum();
            if deg > total || deg == 0 {
                continue;
            }
            // each variable can absorb at most this much of the target degree
            let max_len = total + 1 - deg;
            let min_len = usize::from(!sig.unital);
            let pool: Vec<Word> = (min_len..=max_len)
                .flat_map(|l| multidegrees_of_total(n, l))
                .flat_map(|a| self.words.words(&a).as_ref().clone())
                .collect();
            let poly = id.polynomial();
            let mut stale = 0;
            while stale < patience && !comp.relations.is_full() {
                let assignment: Vec<Element> = (0..id.num_vars())
                    .map(|_| {
                        Element::from_terms(
                            pool.iter().map(|w| (w.clone(), q(rng.gen_range(-9..=9)))),
                        )
                    })
                    .collect();
                let value =
                    substitute(sig, &poly, &assignment).expect("instances stay in signature");
                let part = value
                    .multihomogeneous_components(n)
                    .remove(alpha)
                    .unwrap_or_default();
                let before = comp.relations.rank();
                self.insert(comp, &part);
                if comp.relations.rank() == before {
                    stale += 1;
                } else {
                    stale = 0;
                }
            }
        }
    }

    /// Products of lower-degree relations with words: the ideal generated by them.
    fn add_ideal_closure(&self, alpha: &[usize], comp: &mut Component) {
        let sig = *self.signature();
        let total: usize = alpha.iter().sum();
        let positions: Vec<usize> = if sig.symmetric {
            vec![0]
        } else {
            (0..sig.arity).collect()
        };
        for beta in sub_multidegrees(alpha) {
            let bt: usize = beta.iter().sum();
            if bt == 0 || bt >= total || !sig.admits_length(bt) {
                continue;
            }
            let inner = self.component(&beta);
            if inner.relations.rank() == 0 {
                continue;
            }
            let rels = inner.relation_elements();
            let rest: Vec<usize> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
            for others in self.splits(&rest, sig.arity - 1, false) {
                let lists: Vec<Arc<Vec<Word>>> =
                    others.iter().map(|p| self.words.words(p)).collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                for choice in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
                    for &pos in &positions {
                        for r in &rels {
                            if comp.relations.is_full() {
                                return;
                            }
                            let mut args: Vec<Element> =
                                choice.iter().map(|w| Element::word((*w).clone())).collect();
                            args.insert(pos, r.clone());
                            let prod = bracket(&sig, &args).expect("arity matches");
                            self.insert(comp, &prod);
                        }
                    }
                }
            }
        }
    }

    /// Ordered splits of `alpha` into `parts` multidegrees; zero parts only if `allow_zero`.
    fn splits(&self, alpha: &[usize], parts: usize, allow_zero: bool) -> Vec<Vec<Multidegree>> {
        let sig = self.signature();
        if parts == 0 {
            return if alpha.iter().all(|&a| a == 0) {
                vec![vec![]]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        for first in sub_multidegrees(alpha) {
            let t: usize = first.iter().sum();
            if (t == 0 && !allow_zero) || (t > 0 && !sig.admits_length(t)) {
                continue;
            }
            let rest: Vec<usize> = alpha.iter().zip(&first).map(|(a, b)| a - b).collect();
            for mut tail in self.splits(&rest, parts - 1, allow_zero) {
                tail.insert(0, first.clone());
                out.push(tail);
            }
        }
        out
    }

    fn multidegrees(&self, degree: usize) -> Vec<Multidegree> {
        multidegrees_of_total(self.signature().num_generators, degree)
    }

    /// Spanning set (a reduced echelon basis) of the degree-`degree` part of the T-ideal.
    pub fn relation_space(&self, degree: usize) -> Result<Vec<Element>> {
        self.check_degree(degree)?;
        Ok(self
            .multidegrees(degree)
            .iter()
            .flat_map(|a| self.component(a).relation_elements())
            .collect())
    }

    /// Basis words of the quotient in the given degree, ascending.
    pub fn quotient_basis(&self, degree: usize) -> Result<Vec<Word>> {
        self.check_degree(degree)?;
        let mut out: Vec<Word> = self
            .multidegrees(degree)
            .iter()
            .flat_map(|a| self.component(a).basis())
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn dimension(&self, degree: usize) -> Result<usize> {
        Ok(self.quotient_basis(degree)?.len())
    }

    /// Basis of a single multihomogeneous component.
    pub fn component_basis(&self, alpha: &[usize]) -> Result<Vec<Word>> {
        self.check_degree(alpha.iter().sum())?;
        Ok(self.component(alpha).basis())
    }

    /// Normal form modulo the T-ideal.
    pub fn reduce(&self, a: &Element) -> Result<Element> {
        let n = self.signature().num_generators;
        if let Some(d) = a.degree() {
            self.check_degree(d)?;
        }
        a.check(self.signature())?;
        let mut out = Element::zero();
        for (alpha, part) in a.multihomogeneous_components(n) {
            let comp = self.component(&alpha);
            for (w, c) in part.terms() {
                comp.reduce_word(w, c, &mut out);
            }
        }
        Ok(out)
    }

    /// Whether `a` lies in the T-ideal.
    pub fn in_relation_space(&self, a: &Element) -> Result<bool> {
        Ok(self.reduce(a)?.is_zero())
    }

    /// Matrix of `v ↦ ⟨args[..slot], v, args[slot..]⟩` from degree `degree` to
    /// degree `degree + Σ deg args`, in the quotient bases.
    pub fn operator_matrix(&self, args: &[Element], slot: usize, degree: usize) -> Result<Matrix> {
        let sig = *self.signature();
        if args.len() + 1 != sig.arity || slot >= sig.arity {
            return Err(Error::WrongArgumentCount {
                expected: sig.arity - 1,
                found: args.len(),
            });
        }
        let mut shift = 0;
        for a in args {
            if !a.is_homogeneous() {
                return Err(Error::InvalidArgument(
                    "operator arguments must be homogeneous".into(),
                ));
            }
            shift += a.degree().unwrap_or(0);
        }
        let source = self.quotient_basis(degree)?;
        let target = self.quotient_basis(degree + shift)?;
        let pos: BTreeMap<&Word, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = Matrix::zeros(target.len(), source.len());
        for (j, v) in source.iter().enumerate() {
            let mut full = args.to_vec();
            full.insert(slot, Element::word(v.clone()));
            let image = self.reduce(&bracket(&sig, &full)?)?;
            for (w, c) in image.terms() {
                m.set(pos[w], j, c.clone());
            }
        }
        Ok(m)
    }

    /// Matrix of left multiplication `L_b` (for m ≥ 3, `M(b, …, b)` acting in the last slot).
    pub fn left_mul_matrix(&self, b: &Element, degree: usize) -> Result<Matrix> {
        let m = self.signature().arity;
        self.operator_matrix(&vec![b.clone(); m - 1], m - 1, degree)
    }

    /// Least `q ≤ bound` such that `M(x, …, x)^q` vanishes on every computed
    /// degree of the one-generator quotient.
    ///
    /// Each basis vector is pushed through the operator until it dies; a chain
    /// that leaves the truncation window while still nonzero makes the answer
    /// unknown unless some other chain already exceeds `bound`.
    pub fn engel_index(&self, bound: usize) -> Result<Probe> {
        let sig = *self.signature();
        if sig.num_generators != 1 {
            return Err(Error::InvalidArgument(
                "Engel index needs a one-generator context".into(),
            ));
        }
        let x = Element::generator(0);
        let args = vec![x; sig.arity - 1];
        let step = sig.arity - 1;
        let mut worst = 0;
        let mut unknown = false;
        for degree in 1..=self.truncation {
            for b in self.quotient_basis(degree)? {
                let mut v = Element::word(b);
                let mut d = degree;
                let mut k = 0;
                loop {
                    if v.is_zero() {
                        worst = worst.max(k);
                        break;
                    }
                    if k >= bound {
                        return Ok(Probe::Absent { bound });
                    }
                    if d + step > self.truncation {
                        unknown = true;
                        break;
                    }
                    let mut full = args.clone();
                    full.push(v);
                    v = self.reduce(&bracket(&sig, &full)?)?;
                    d += step;
                    k += 1;
                }
            }
        }
        if unknown {
            Ok(Probe::Unknown {
                truncation: self.truncation,
            })
        } else {
            Ok(Probe::Index(worst.max(1)))
        }
    }
}
