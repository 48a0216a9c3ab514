use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::freealg::{bracket, normalize, Element, RawWord, Signature, Word};
use crate::q;

/// A polynomial identity `lhs = rhs` over auxiliary variables `z1..zt`.
///
/// The variables are the generators of the free algebra with the shape of the
/// variety's signature and `t` generators.
#[derive(Clone, PartialEq, Eq)]
pub struct Identity {
    num_vars: usize,
    lhs: Element,
    rhs: Element,
}

impl Identity {
    pub fn new(num_vars: usize, lhs: Element, rhs: Element) -> Self {
        Identity { num_vars, lhs, rhs }
    }

    /// The identity `expr = 0`; the variable count is read off the expression.
    pub fn vanishing(expr: Element) -> Self {
        let num_vars = expr
            .words()
            .filter_map(Word::max_generator)
            .max()
            .map_or(1, |m| m + 1);
        Identity {
            num_vars,
            lhs: expr,
            rhs: Element::zero(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn lhs(&self) -> &Element {
        &self.lhs
    }

    pub fn rhs(&self) -> &Element {
        &self.rhs
    }

    /// `lhs − rhs`.
    pub fn polynomial(&self) -> Element {
        &self.lhs - &self.rhs
    }

    /// Degree in each variable; fails unless every term has the same multidegree.
    pub fn var_degrees(&self) -> Result<Vec<usize>> {
        let poly = self.polynomial();
        let mut degrees = None;
        for w in poly.words() {
            let d = w.multidegree(self.num_vars);
            match &degrees {
                None => degrees = Some(d),
                Some(prev) if *prev != d => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        Ok(degrees.unwrap_or_else(|| vec![0; self.num_vars]))
    }

    pub fn total_degree(&self) -> Result<usize> {
        Ok(self.var_degrees()?.iter().sum())
    }

    pub fn is_multilinear(&self) -> bool {
        self.var_degrees()
            .map(|d| d.iter().all(|&k| k <= 1))
            .unwrap_or(false)
    }

    /// Novikov identity `(xy)z = (xz)y` in the binary non-symmetric free algebra.
    pub fn novikov() -> Self {
        let sig = Signature::new(2, false, false, 3).unwrap();
        let (x, y, z) = (
            Element::generator(0),
            Element::generator(1),
            Element::generator(2),
        );
        let xy = bracket(&sig, &[x.clone(), y.clone()]).unwrap();
        let xz = bracket(&sig, &[x, z.clone()]).unwrap();
        Identity::new(
            3,
            bracket(&sig, &[xy, z]).unwrap(),
            bracket(&sig, &[xz, y]).unwrap(),
        )
    }

    /// Left-symmetry `(xy)z − x(yz) = (yx)z − y(xz)`.
    pub fn left_symmetric() -> Self {
        let sig = Signature::new(2, false, false, 3).unwrap();
        let (x, y, z) = (
            Element::generator(0),
            Element::generator(1),
            Element::generator(2),
        );
        let b = |a: &Element, c: &Element| bracket(&sig, &[a.clone(), c.clone()]).unwrap();
        let lhs = &b(&b(&x, &y), &z) - &b(&x, &b(&y, &z));
        let rhs = &b(&b(&y, &x), &z) - &b(&y, &b(&x, &z));
        Identity::new(3, lhs, rhs)
    }

    /// Jacobi identity `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` for the bracket of the algebra.
    pub fn jacobi_of_commutator() -> Self {
        let sig = Signature::new(2, false, false, 3).unwrap();
        let v = [
            Element::generator(0),
            Element::generator(1),
            Element::generator(2),
        ];
        let b = |a: &Element, c: &Element| bracket(&sig, &[a.clone(), c.clone()]).unwrap();
        let comm = |a: &Element, c: &Element| &b(a, c) - &b(c, a);
        let mut sum = Element::zero();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            sum += &comm(&comm(&v[i], &v[j]), &v[k]);
        }
        Identity::new(3, sum, Element::zero())
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "novikov" => Some(Identity::novikov()),
            "left-symmetric" | "left_symmetric" => Some(Identity::left_symmetric()),
            "jacobi" => Some(Identity::jacobi_of_commutator()),
            _ => None,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Relabels the leaves of `w`: the k-th occurrence of variable `v` becomes `labels[v][k]`.
fn relabel(w: &Word, labels: &[Vec<usize>], seen: &mut [usize]) -> RawWord {
    match w {
        Word::Unit => RawWord::Unit,
        Word::Gen(v) => {
            let v = *v as usize;
            let out = RawWord::Gen(labels[v][seen[v]]);
            seen[v] += 1;
            out
        }
        Word::Node(_) => RawWord::Node(
            w.children()
                .iter()
                .map(|c| relabel(c, labels, seen))
                .collect(),
        ),
    }
}

/// Full multilinearization: each variable of degree `d` is replaced by `d`
/// fresh variables and the component linear in every fresh variable is kept.
///
/// Fresh variables are numbered consecutively per original variable, so an
/// already multilinear identity is returned unchanged. `shape` supplies the
/// arity, symmetry and unit flags; its generator count is ignored.
pub fn multilinearize(shape: &Signature, id: &Identity) -> Result<Vec<Identity>> {
    let degrees = id.var_degrees()?;
    let mut offsets = Vec::with_capacity(degrees.len());
    let mut next = 0;
    for &d in &degrees {
        offsets.push(next);
        next += d;
    }
    let fresh_sig = shape.with_generators(next.max(1));
    let per_var: Vec<Vec<Vec<usize>>> = degrees
        .iter()
        .zip(&offsets)
        .map(|(&d, &off)| (off..off + d).permutations(d).collect())
        .collect();
    let poly = id.polynomial();
    let mut out = Element::zero();
    for (w, c) in poly.terms() {
        for labels in per_var
            .iter()
            .map(|p| p.iter().cloned())
            .multi_cartesian_product()
        {
            let mut seen = vec![0; degrees.len()];
            let raw = relabel(w, &labels, &mut seen);
            out.add_term(normalize(&fresh_sig, &raw)?, c.clone());
        }
    }
    if out.is_zero() {
        return Ok(vec![]);
    }
    Ok(vec![Identity::new(next, out, Element::zero())])
}

/// Partial linearization in variable `var`: substitutes `var ↦ var + y` with a
/// new variable `y` (index `num_vars`) and keeps the component of degree one in `y`.
pub fn partial_linearize(shape: &Signature, id: &Identity, var: usize) -> Result<Identity> {
    if var >= id.num_vars {
        return Err(Error::UnassignedVariable(var + 1));
    }
    id.var_degrees()?;
    let fresh = id.num_vars;
    let sig = shape.with_generators(fresh + 1);
    let mut out = Element::zero();
    for (w, c) in id.polynomial().terms() {
        let occurrences = w.count_generator(var);
        for k in 0..occurrences {
            let raw = replace_occurrence(w, var, k, fresh, &mut 0);
            out.add_term(normalize(&sig, &raw)?, c.clone());
        }
    }
    Ok(Identity::new(fresh + 1, out, Element::zero()))
}

fn replace_occurrence(
    w: &Word,
    var: usize,
    target: usize,
    fresh: usize,
    seen: &mut usize,
) -> RawWord {
    match w {
        Word::Gen(v) if *v as usize == var => {
            let hit = *seen == target;
            *seen += 1;
            RawWord::Gen(if hit { fresh } else { var })
        }
        Word::Node(_) => RawWord::Node(
            w.children()
                .iter()
                .map(|c| replace_occurrence(c, var, target, fresh, seen))
                .collect(),
        ),
        other => RawWord::from(other),
    }
}

/// Multiplicity data used to scale a full linearization back: `∏ d_i!`.
pub fn linearization_factor(degrees: &[usize]) -> crate::Q {
    degrees.iter().fold(q(1), |acc, &d| {
        acc * q((1..=d as i64).product::<i64>().max(1))
    })
}
