//! Derivations of a free (or relatively free) m-ary algebra and the
//! left-symmetric product `D_F · D_G = D_{D_F(G)}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{fmt_coeff_term, Element, Signature, Word};
use crate::probe::Probe;
use crate::varieties::Ambient;

/// `D_F = f_1 ∂_1 + … + f_n ∂_n`, stored as the tuple `F`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    coords: Vec<Element>,
}

impl Derivation {
    pub fn coords(&self) -> &[Element] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Element {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Element> {
        self.coords
    }

    pub fn num_generators(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Element::is_zero)
    }

    pub fn scale(&self, c: &crate::Q) -> Derivation {
        Derivation {
            coords: self.coords.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Largest coordinate degree minus one (the grading index); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coords
            .iter()
            .filter_map(Element::degree)
            .max()
            .map(|d| d as i64 - 1)
    }
}

impl std::ops::Add for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        Derivation {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        Derivation {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for Derivation {
    /// Distributed form, e.g. `2*((x1 x1) x1) d1 - x1 d2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, coord) in self.coords.iter().enumerate() {
            for (w, c) in coord.terms().rev() {
                let body = format!("{w} d{}", i + 1);
                fmt_coeff_term(f, first, c, &body)?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The left-symmetric algebra of derivations over an ambient algebra.
#[derive(Debug, Clone)]
pub struct DerivationAlgebra {
    ambient: Ambient,
}

impl DerivationAlgebra {
    pub fn new(ambient: Ambient) -> Self {
        DerivationAlgebra { ambient }
    }

    pub fn free(sig: Signature) -> Self {
        DerivationAlgebra::new(Ambient::free(sig))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn signature(&self) -> &Signature {
        self.ambient.signature()
    }

    /// Builds `D_F` with every coordinate in normal form.
    pub fn derivation(&self, coords: Vec<Element>) -> Result<Derivation> {
        let n = self.ambient.num_generators();
        if coords.len() != n {
            return Err(Error::WrongArgumentCount {
                expected: n,
                found: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .map(|f| self.ambient.reduce(f))
            .collect::<Result<_>>()?;
        Ok(Derivation { coords })
    }

    /// `f ∂_i`.
    pub fn monomial(&self, f: Element, i: usize) -> Result<Derivation> {
        let n = self.ambient.num_generators();
        if i >= n {
            return Err(Error::UnknownGenerator {
                index: i + 1,
                available: n,
            });
        }
        let mut coords = vec![Element::zero(); n];
        coords[i] = f;
        self.derivation(coords)
    }

    pub fn zero(&self) -> Derivation {
        Derivation {
            coords: vec![Element::zero(); self.ambient.num_generators()],
        }
    }

    /// `D_X = x_1 ∂_1 + … + x_n ∂_n`, the right identity.
    pub fn identity_derivation(&self) -> Derivation {
        Derivation {
            coords: (0..self.ambient.num_generators())
                .map(Element::generator)
                .collect(),
        }
    }

    fn check(&self, d: &Derivation) -> Result<()> {
        let n = self.ambient.num_generators();
        if d.coords.len() != n {
            return Err(Error::SignatureMismatch(format!(
                "derivation has {} coordinates, expected {n}",
                d.coords.len()
            )));
        }
        Ok(())
    }

    /// `D(a)` via the Leibniz rule over the m-ary bracket, reduced in the ambient.
    pub fn apply(&self, d: &Derivation, a: &Element) -> Result<Element> {
        self.check(d)?;
        let sig = *self.signature();
        a.check(&sig)?;
        let mut cache = BTreeMap::new();
        let mut out = Element::zero();
        for (w, c) in a.terms() {
            out += &apply_word(&sig, &d.coords, w, &mut cache)?.scale(c);
        }
        self.ambient.reduce(&out)
    }

    /// `D^r(a)`.
    pub fn apply_iterated(&self, d: &Derivation, r: usize, a: &Element) -> Result<Element> {
        let mut v = self.ambient.reduce(a)?;
        for _ in 0..r {
            if v.is_zero() {
                break;
            }
            v = self.apply(d, &v)?;
        }
        Ok(v)
    }

    /// `u · v = D_{u(V)}`.
    pub fn lsym_mul(&self, u: &Derivation, v: &Derivation) -> Result<Derivation> {
        self.check(u)?;
        self.check(v)?;
        let coords = v
            .coords
            .iter()
            .map(|g| self.apply(u, g))
            .collect::<Result<_>>()?;
        Ok(Derivation { coords })
    }

    pub fn commutator(&self, u: &Derivation, v: &Derivation) -> Result<Derivation> {
        Ok(&self.lsym_mul(u, v)? - &self.lsym_mul(v, u)?)
    }

    /// `D^1 = D`, `D^{r+1} = D · D^r`.
    pub fn left_power(&self, d: &Derivation, r: usize) -> Result<Derivation> {
        if r == 0 {
            return Err(Error::InvalidArgument("powers start at 1".into()));
        }
        let mut p = d.clone();
        for _ in 1..r {
            p = self.lsym_mul(d, &p)?;
        }
        Ok(p)
    }

    /// `D^{[1]} = D`, `D^{[r+1]} = D^{[r]} · D`.
    pub fn right_power(&self, d: &Derivation, r: usize) -> Result<Derivation> {
        if r == 0 {
            return Err(Error::InvalidArgument("powers start at 1".into()));
        }
        let mut p = d.clone();
        for _ in 1..r {
            p = self.lsym_mul(&p, d)?;
        }
        Ok(p)
    }

    pub fn is_left_nilpotent(&self, d: &Derivation, bound: usize) -> Result<Probe> {
        self.probe(d, bound, |p| self.lsym_mul(d, p))
    }

    pub fn is_right_nilpotent(&self, d: &Derivation, bound: usize) -> Result<Probe> {
        self.probe(d, bound, |p| self.lsym_mul(p, d))
    }

    fn probe(
        &self,
        d: &Derivation,
        bound: usize,
        step: impl Fn(&Derivation) -> Result<Derivation>,
    ) -> Result<Probe> {
        self.check(d)?;
        let mut p = d.clone();
        for r in 1..=bound {
            if p.is_zero() {
                return Ok(Probe::Index(r));
            }
            if r == bound {
                break;
            }
            p = match step(&p) {
                Ok(next) => next,
                Err(Error::TruncationExceeded { truncation, .. }) => {
                    return Ok(Probe::Unknown { truncation })
                }
                Err(e) => return Err(e),
            };
        }
        Ok(Probe::Absent { bound })
    }

    /// Homogeneous components keyed by grading index `length − 1`.
    pub fn grading_decompose(&self, d: &Derivation) -> BTreeMap<i64, Derivation> {
        let n = d.coords.len();
        let mut out: BTreeMap<i64, Derivation> = BTreeMap::new();
        for (i, coord) in d.coords.iter().enumerate() {
            for (len, part) in coord.homogeneous_components() {
                let entry = out.entry(len as i64 - 1).or_insert_with(|| Derivation {
                    coords: vec![Element::zero(); n],
                });
                entry.coords[i] = part;
            }
        }
        out
    }
}

fn apply_word(
    sig: &Signature,
    coords: &[Element],
    w: &Word,
    cache: &mut BTreeMap<Word, Element>,
) -> Result<Element> {
    match w {
        Word::Unit => Ok(Element::zero()),
        Word::Gen(i) => coords
            .get(*i as usize)
            .cloned()
            .ok_or(Error::UnknownGenerator {
                index: *i as usize + 1,
                available: coords.len(),
            }),
        Word::Node(_) => {
            if let Some(hit) = cache.get(w) {
                return Ok(hit.clone());
            }
            let kids = w.children();
            let mut out = Element::zero();
            for k in 0..kids.len() {
                let dk = apply_word(sig, coords, &kids[k], cache)?;
                if dk.is_zero() {
                    continue;
                }
                let args: Vec<Element> = kids
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        if j == k {
                            dk.clone()
                        } else {
                            Element::word(c.clone())
                        }
                    })
                    .collect();
                out += &crate::freealg::bracket(sig, &args)?;
            }
            cache.insert(w.clone(), out.clone());
            Ok(out)
        }
    }
}
