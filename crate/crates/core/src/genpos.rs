//! Generation of the positive part of the derivation algebra of the free
//! one-generator symmetric m-ary algebra by `D = ⟨x, …, x⟩∂x`.
//!
//! A certificate writes `w∂x` as a rational combination of left-symmetric
//! product trees over `D` and `x∂x`. It is built by induction on the length of
//! `w` and then on `ρ(w)`, the number of children of `w` that are not `x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::deriv::{Derivation, DerivationAlgebra};
use crate::error::{Error, Result};
use crate::freealg::{enumerate_reduced, fmt_coeff_term, Element, Signature, Word};
use crate::linalg::{Echelon, SparseRow};
use crate::{q, Q};

/// `ρ(w)`: the number of children of length greater than one, or `None` when
/// every child is the generator.
pub fn rho(w: &Word) -> Result<Option<usize>> {
    if !matches!(w, Word::Node(_)) {
        return Err(Error::InvalidArgument(format!("{w} is not a product")));
    }
    let i = w.children().iter().filter(|c| c.len() > 1).count();
    Ok((i > 0).then_some(i))
}

/// A product tree over the two seeds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    /// `D = ⟨x, …, x⟩∂x`.
    Seed,
    /// `x∂x`.
    Identity,
    Product(Arc<Expr>, Arc<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Seed => write!(f, "D"),
            Expr::Identity => write!(f, "DX"),
            Expr::Product(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational combination of product trees; scalars only at the root.
pub type Combination = BTreeMap<Arc<Expr>, Q>;

fn add_expr(out: &mut Combination, e: Arc<Expr>, c: Q) {
    if c.is_zero() {
        return;
    }
    let entry = out.entry(e.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&e);
    }
}

fn product(a: &Combination, b: &Combination) -> Combination {
    let mut out = Combination::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_expr(
                &mut out,
                Arc::new(Expr::Product(ea.clone(), eb.clone())),
                ca * cb,
            );
        }
    }
    out
}

/// One induction step `(w_i∂)·(u∂) = c·w∂ + Σ c_t t∂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rho: usize,
    /// Coefficient of `w` in `w_i∂(u)`; expected to be `m − ρ + 1`.
    pub observed_coefficient: Q,
    pub factors: (Word, Word),
    pub corrections: Vec<(Word, Q)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: Word,
    pub expression: Combination,
    /// `None` for the two seeds.
    pub step: Option<Step>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expression.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.expression.iter().enumerate() {
            fmt_coeff_term(f, k == 0, c, e)?;
        }
        Ok(())
    }
}

/// Builds and checks certificates for one arity, memoizing sub-results.
#[derive(Debug)]
pub struct Prover {
    alg: DerivationAlgebra,
    memo: HashMap<Word, Certificate>,
}

impl Prover {
    pub fn new(arity: usize) -> Result<Self> {
        let sig = Signature::new(arity, true, false, 1)?;
        Ok(Prover {
            alg: DerivationAlgebra::free(sig),
            memo: HashMap::new(),
        })
    }

    pub fn algebra(&self) -> &DerivationAlgebra {
        &self.alg
    }

    fn arity(&self) -> usize {
        self.alg.signature().arity
    }

    /// `⟨x, …, x⟩`.
    pub fn seed_word(&self) -> Word {
        self.alg
            .signature()
            .node(vec![Word::x(); self.arity()])
            .expect("arity matches")
    }

    pub fn seed(&self) -> Derivation {
        self.word_derivation(&self.seed_word())
    }

    pub fn word_derivation(&self, w: &Word) -> Derivation {
        self.alg
            .derivation(vec![Element::word(w.clone())])
            .expect("one coordinate")
    }

    /// Evaluates a combination of product trees in the derivation algebra.
    pub fn evaluate(&self, expr: &Combination) -> Result<Derivation> {
        let mut cache = HashMap::new();
        let mut out = self.alg.zero();
        for (e, c) in expr {
            out = &out + &self.eval_expr(e, &mut cache)?.scale(c);
        }
        Ok(out)
    }

    fn eval_expr(
        &self,
        e: &Arc<Expr>,
        cache: &mut HashMap<Arc<Expr>, Derivation>,
    ) -> Result<Derivation> {
        if let Some(hit) = cache.get(e) {
            return Ok(hit.clone());
        }
        let value = match e.as_ref() {
            Expr::Seed => self.seed(),
            Expr::Identity => self.alg.identity_derivation(),
            Expr::Product(a, b) => {
                let (va, vb) = (self.eval_expr(a, cache)?, self.eval_expr(b, cache)?);
                self.alg.lsym_mul(&va, &vb)?
            }
        };
        cache.insert(e.clone(), value.clone());
        Ok(value)
    }

    /// Certificate for `w∂x`, checked by evaluation before it is returned.
    pub fn certificate(&mut self, w: &Word) -> Result<Certificate> {
        let cert = self.build(w)?;
        let value = self.evaluate(&cert.expression)?;
        if value != self.word_derivation(w) {
            return Err(Error::Internal(format!(
                "certificate for {w} evaluates to {value}"
            )));
        }
        Ok(cert)
    }

    fn build(&mut self, w: &Word) -> Result<Certificate> {
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        self.alg.signature().check(w)?;
        let cert = if w == &Word::x() {
            Certificate {
                target: w.clone(),
                expression: BTreeMap::from([(Arc::new(Expr::Identity), Q::one())]),
                step: None,
            }
        } else {
            match rho(w)? {
                None => Certificate {
                    target: w.clone(),
                    expression: BTreeMap::from([(Arc::new(Expr::Seed), Q::one())]),
                    step: None,
                },
                Some(i) => self.build_step(w, i)?,
            }
        };
        self.memo.insert(w.clone(), cert.clone());
        Ok(cert)
    }

    fn build_step(&mut self, w: &Word, i: usize) -> Result<Certificate> {
        let sig = *self.alg.signature();
        let kids = w.children();
        let wi = kids[i - 1].clone();
        let mut u_kids = kids.to_vec();
        u_kids[i - 1] = Word::x();
        let u = sig.node(u_kids)?;

        let image = self
            .alg
            .apply(&self.word_derivation(&wi), &Element::word(u.clone()))?;
        let observed = image.coefficient(w);
        let expected = q((self.arity() - i + 1) as i64);
        if observed != expected {
            return Err(Error::Internal(format!(
                "coefficient of {w} is {observed}, expected {expected}"
            )));
        }
        let corrections: Vec<(Word, Q)> = image
            .terms()
            .filter(|(t, _)| *t != w)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();

        let mut expression = product(&self.build(&wi)?.expression, &self.build(&u)?.expression);
        for (t, c) in &corrections {
            for (e, k) in self.build(t)?.expression {
                add_expr(&mut expression, e, -(c * k));
            }
        }
        let inv = observed.recip();
        expression = expression.into_iter().map(|(e, c)| (e, c * &inv)).collect();
        Ok(Certificate {
            target: w.clone(),
            expression,
            step: Some(Step {
                rho: i,
                observed_coefficient: observed,
                factors: (wi, u),
                corrections,
            }),
        })
    }
}

/// One-shot certificate for a word of the free symmetric algebra of the given arity.
pub fn certificate(arity: usize, w: &Word) -> Result<Certificate> {
    Prover::new(arity)?.certificate(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanRow {
    pub degree: usize,
    pub closure_dimension: usize,
    pub reduced_words: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanReport {
    pub arity: usize,
    pub rows: Vec<SpanRow>,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.closure_dimension == r.reduced_words)
    }

    /// Closure dimensions at the given degrees.
    pub fn dimensions(&self, degrees: &[usize]) -> Vec<usize> {
        degrees
            .iter()
            .map(|d| {
                self.rows
                    .iter()
                    .find(|r| r.degree == *d)
                    .map_or(0, |r| r.closure_dimension)
            })
            .collect()
    }
}

/// Closes `{x∂x, D}` under the left-symmetric product and compares each degree
/// `s ≤ max_degree` with the number of reduced words of length `s + 1`.
pub fn span_check(max_degree: usize, arity: usize) -> Result<SpanReport> {
    let prover = Prover::new(arity)?;
    let seeds = vec![prover.alg.identity_derivation(), prover.seed()];
    closure(arity, &seeds, max_degree)
}

/// Degree-by-degree closure of arbitrary homogeneous one-coordinate seeds.
pub fn closure(arity: usize, seeds: &[Derivation], max_degree: usize) -> Result<SpanReport> {
    let sig = Signature::new(arity, true, false, 1)?;
    let alg = DerivationAlgebra::free(sig);
    let mut layers: Vec<Vec<Derivation>> = Vec::new();
    let mut rows = Vec::new();
    for s in 0..=max_degree {
        let words = enumerate_reduced(&sig, s + 1)?;
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let to_row = |d: &Derivation| -> Result<SparseRow> {
            let f = &d.coords()[0];
            if f.words().any(|w| w.len() != s + 1) {
                return Err(Error::NonHomogeneous);
            }
            Ok(f.terms().map(|(w, c)| (index[w], c.clone())).collect())
        };
        let mut ech = Echelon::new(words.len());
        let mut layer: Vec<Derivation> = Vec::new();
        let add = |d: Derivation, ech: &mut Echelon, layer: &mut Vec<Derivation>| -> Result<()> {
            if !d.is_zero() && ech.insert(to_row(&d)?) {
                layer.push(d);
            }
            Ok(())
        };
        for seed in seeds {
            if seed.degree() == Some(s as i64) {
                add(seed.clone(), &mut ech, &mut layer)?;
            }
        }
        for p in 1..s {
            for a in &layers[p] {
                for b in &layers[s - p] {
                    add(alg.lsym_mul(a, b)?, &mut ech, &mut layer)?;
                }
            }
        }
        // products with degree-0 elements stay in degree s; iterate to a fixed point
        let zero_layer: Vec<Derivation> = if s == 0 {
            Vec::new()
        } else {
            layers[0].clone()
        };
        let mut start = 0;
        loop {
            let before = layer.len();
            let current: Vec<Derivation> = if s == 0 {
                layer.clone()
            } else {
                layer[start..].to_vec()
            };
            let left: &[Derivation] = if s == 0 { &current } else { &zero_layer };
            for a in left {
                for b in &current {
                    add(alg.lsym_mul(a, b)?, &mut ech, &mut layer)?;
                    add(alg.lsym_mul(b, a)?, &mut ech, &mut layer)?;
                }
            }
            if layer.len() == before {
                break;
            }
            start = before;
        }
        if sig.admits_length(s + 1) {
            rows.push(SpanRow {
                degree: s,
                closure_dimension: ech.rank(),
                reduced_words: words.len(),
            });
        }
        layers.push(layer);
    }
    Ok(SpanReport { arity, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2(sig: &Signature) -> Word {
        sig.node(vec![Word::x(), Word::x()]).unwrap()
    }

    #[test]
    fn rho_examples() {
        let sig = Signature::one_var_symmetric(2);
        let x2x = sig.node(vec![x2(&sig), Word::x()]).unwrap();
        assert_eq!(rho(&x2x).unwrap(), Some(1));
        assert_eq!(
            rho(&sig.node(vec![x2(&sig), x2(&sig)]).unwrap()).unwrap(),
            Some(2)
        );
        assert_eq!(rho(&x2(&sig)).unwrap(), None);
        assert!(rho(&Word::x()).is_err());
    }

    #[test]
    fn small_certificates() {
        let sig = Signature::one_var_symmetric(2);
        let mut prover = Prover::new(2).unwrap();
        let x2x = sig.node(vec![x2(&sig), Word::x()]).unwrap();
        assert_eq!(prover.certificate(&x2x).unwrap().to_string(), "1/2*(D * D)");
        let x2x2 = sig.node(vec![x2(&sig), x2(&sig)]).unwrap();
        assert_eq!(
            prover.certificate(&x2x2).unwrap().to_string(),
            "1/2*(D * (D * D)) - 1/2*((D * D) * D)"
        );
        let t = Signature::one_var_symmetric(3);
        let seed = t.node(vec![Word::x(); 3]).unwrap();
        assert_eq!(certificate(3, &seed).unwrap().to_string(), "D");
    }

    #[test]
    fn identity_alone_stays_one_dimensional() {
        let prover = Prover::new(2).unwrap();
        let report = closure(2, &[prover.algebra().identity_derivation()], 3).unwrap();
        assert_eq!(report.dimensions(&[0, 1, 2, 3]), vec![1, 0, 0, 0]);
    }
}
