//! The universal derivation, Fox derivatives and Jacobian matrices.
//!
//! Elements of the universal enveloping algebra are kept as formal products of
//! multiplication-operator generators and compared by their action on the free
//! generators `y_j` of the module of differentials. That module lives inside the
//! doubled algebra on `x_1..x_n, y_1..y_n`, where `y_j` is generator `n + j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::deriv::DerivationAlgebra;
use crate::error::{Error, Result};
use crate::freealg::{fmt_coeff_term, Element, Signature, Word};
use crate::probe::Probe;
use crate::varieties::Ambient;
use crate::Q;

/// `U_slot(b_1, …, b_{m−1})`: multiplication with the argument placed at `slot`.
///
/// For symmetric signatures the slot is `None` and the arguments are sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvGenerator {
    slot: Option<usize>,
    args: Vec<Element>,
}

impl EnvGenerator {
    /// `slot` is 0-based and ignored for symmetric signatures.
    pub fn new(sig: &Signature, slot: usize, mut args: Vec<Element>) -> Result<Self> {
        if args.len() + 1 != sig.arity {
            return Err(Error::WrongArgumentCount {
                expected: sig.arity - 1,
                found: args.len(),
            });
        }
        if slot >= sig.arity {
            return Err(Error::InvalidArgument(format!(
                "slot {} out of range for arity {}",
                slot + 1,
                sig.arity
            )));
        }
        for a in &args {
            a.check(sig)?;
        }
        if sig.symmetric {
            args.sort();
            Ok(EnvGenerator { slot: None, args })
        } else {
            Ok(EnvGenerator {
                slot: Some(slot),
                args,
            })
        }
    }

    pub fn slot(&self) -> Option<usize> {
        self.slot
    }

    pub fn args(&self) -> &[Element] {
        &self.args
    }

    /// The multiplication operator applied to `v` in `ambient`.
    fn act(&self, ambient: &Ambient, v: &Element) -> Result<Element> {
        let mut full = self.args.clone();
        full.insert(self.slot.unwrap_or(full.len()), v.clone());
        ambient.bracket(&full)
    }
}

impl fmt::Display for EnvGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slot {
            Some(s) => write!(f, "U{}(", s + 1)?,
            None => write!(f, "U(")?,
        }
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for EnvGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational combination of formal products of [`EnvGenerator`]s. The empty
/// product is the identity operator.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvElement {
    terms: BTreeMap<Vec<EnvGenerator>, Q>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn one() -> Self {
        EnvElement::product(vec![], Q::one())
    }

    pub fn generator(g: EnvGenerator) -> Self {
        EnvElement::product(vec![g], Q::one())
    }

    pub fn product(factors: Vec<EnvGenerator>, c: Q) -> Self {
        let mut e = EnvElement::zero();
        e.add_term(factors, c);
        e
    }

    pub fn add_term(&mut self, factors: Vec<EnvGenerator>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(factors).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Formally zero; semantic vanishing is [`env_is_zero`].
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<EnvGenerator>, &Q)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Q) -> EnvElement {
        let mut out = EnvElement::zero();
        for (p, k) in &self.terms {
            out.add_term(p.clone(), k * c);
        }
        out
    }

    /// Applies the operator to `v` in `ambient`, rightmost factor first.
    pub fn act(&self, ambient: &Ambient, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (factors, c) in &self.terms {
            let mut w = v.clone();
            for g in factors.iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = g.act(ambient, &w)?;
            }
            out += &w.scale(c);
        }
        ambient.reduce(&out)
    }
}

impl Add for &EnvElement {
    type Output = EnvElement;
    fn add(self, rhs: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &EnvElement {
    type Output = EnvElement;
    fn sub(self, rhs: &EnvElement) -> EnvElement {
        self + &rhs.scale(&-Q::one())
    }
}

impl Mul for &EnvElement {
    type Output = EnvElement;
    /// Composition: `(u·v)` acts as `u` after `v`.
    fn mul(self, rhs: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (p, a) in &self.terms {
            for (r, b) in &rhs.terms {
                let mut factors = p.clone();
                factors.extend(r.iter().cloned());
                out.add_term(factors, a * b);
            }
        }
        out
    }
}

struct Factors<'a>(&'a [EnvGenerator]);

impl fmt::Display for Factors<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        self.0.iter().try_for_each(|g| write!(f, "{g}"))
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, k == 0, c, &Factors(p))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `y_j` in the doubled algebra, `j` 0-based.
pub fn y(n: usize, j: usize) -> Element {
    Element::generator(n + j)
}

/// The universal derivation `x_i ↦ y_i`, computed in the doubled algebra.
pub fn omega(ambient: &Ambient, b: &Element) -> Result<Element> {
    let n = ambient.num_generators();
    let b = ambient.reduce(b)?;
    let doubled = DerivationAlgebra::new(ambient.doubled()?);
    let coords = (0..2 * n)
        .map(|i| if i < n { y(n, i) } else { Element::zero() })
        .collect();
    let d = doubled.derivation(coords)?;
    doubled.apply(&d, &b)
}

/// `u_1, …, u_n` with `Ω(b) = Σ u_i y_i`, read off the root-to-leaf paths of `b`.
pub fn fox_derivatives(ambient: &Ambient, b: &Element) -> Result<Vec<EnvElement>> {
    let sig = *ambient.signature();
    let b = ambient.reduce(b)?;
    let mut out = vec![EnvElement::zero(); sig.num_generators];
    for (w, c) in b.terms() {
        let mut path = Vec::new();
        peel(&sig, w, c, &mut path, &mut out)?;
    }
    Ok(out)
}

fn peel(
    sig: &Signature,
    w: &Word,
    c: &Q,
    path: &mut Vec<EnvGenerator>,
    out: &mut [EnvElement],
) -> Result<()> {
    match w {
        Word::Unit => Ok(()),
        Word::Gen(i) => {
            out[*i as usize].add_term(path.clone(), c.clone());
            Ok(())
        }
        Word::Node(_) => {
            let kids = w.children();
            for k in 0..kids.len() {
                let siblings = kids
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, s)| Element::word(s.clone()))
                    .collect();
                path.push(EnvGenerator::new(sig, k, siblings)?);
                peel(sig, &kids[k], c, path, out)?;
                path.pop();
            }
            Ok(())
        }
    }
}

/// `φ(u)(a)`: the operator acting on an element of the algebra itself.
pub fn env_apply_alg(ambient: &Ambient, u: &EnvElement, a: &Element) -> Result<Element> {
    u.act(ambient, &ambient.reduce(a)?)
}

/// `u · ω` for `ω` in the doubled algebra.
pub fn env_act(ambient: &Ambient, u: &EnvElement, omega: &Element) -> Result<Element> {
    u.act(&ambient.doubled()?, omega)
}

/// Whether `u` annihilates every `y_j`; exact by freeness of the differential module.
pub fn env_is_zero(ambient: &Ambient, u: &EnvElement) -> Result<bool> {
    let n = ambient.num_generators();
    for j in 0..n {
        if !env_act(ambient, u, &y(n, j))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An `n × n` matrix over the enveloping algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct JacobianMatrix {
    entries: Vec<Vec<EnvElement>>,
}

impl JacobianMatrix {
    pub fn new(entries: Vec<Vec<EnvElement>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(
                "Jacobian matrices are square".into(),
            ));
        }
        Ok(JacobianMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            EnvElement::one()
                        } else {
                            EnvElement::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        JacobianMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &EnvElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<EnvElement>] {
        &self.entries
    }

    pub fn pow(&self, k: usize) -> JacobianMatrix {
        (0..k).fold(JacobianMatrix::identity(self.size()), |acc, _| &acc * self)
    }

    /// `(J F)_i = Σ_j φ(J_ij)(f_j)`.
    pub fn apply(&self, ambient: &Ambient, f: &[Element]) -> Result<Vec<Element>> {
        if f.len() != self.size() {
            return Err(Error::WrongArgumentCount {
                expected: self.size(),
                found: f.len(),
            });
        }
        self.entries
            .iter()
            .map(|row| {
                let mut acc = Element::zero();
                for (u, fj) in row.iter().zip(f) {
                    acc += &env_apply_alg(ambient, u, fj)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Entrywise semantic vanishing.
    pub fn is_zero(&self, ambient: &Ambient) -> Result<bool> {
        for row in &self.entries {
            for u in row {
                if !env_is_zero(ambient, u)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl Mul for &JacobianMatrix {
    type Output = JacobianMatrix;
    fn mul(self, rhs: &JacobianMatrix) -> JacobianMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        (0..n).fold(EnvElement::zero(), |acc, j| {
                            &acc + &(&self.entries[i][j] * &rhs.entries[j][k])
                        })
                    })
                    .collect()
            })
            .collect();
        JacobianMatrix { entries }
    }
}

impl fmt::Display for JacobianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, u) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{u}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for JacobianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `J(F)`, entry `(i, j)` the `j`-th Fox derivative of `f_i`.
pub fn jacobian(ambient: &Ambient, f: &[Element]) -> Result<JacobianMatrix> {
    let n = ambient.num_generators();
    if f.len() != n {
        return Err(Error::WrongArgumentCount {
            expected: n,
            found: f.len(),
        });
    }
    let entries = f
        .iter()
        .map(|fi| fox_derivatives(ambient, fi))
        .collect::<Result<_>>()?;
    Ok(JacobianMatrix { entries })
}

/// Least `k ≤ bound` with `J^k = 0` entrywise.
pub fn mat_is_nilpotent(ambient: &Ambient, j: &JacobianMatrix, bound: usize) -> Result<Probe> {
    let mut p = j.clone();
    for k in 1..=bound {
        match p.is_zero(ambient) {
            Ok(true) => return Ok(Probe::Index(k)),
            Ok(false) => {}
            Err(Error::TruncationExceeded { truncation, .. }) => {
                return Ok(Probe::Unknown { truncation })
            }
            Err(e) => return Err(e),
        }
        if k < bound {
            p = &p * j;
        }
    }
    Ok(Probe::Absent { bound })
}
