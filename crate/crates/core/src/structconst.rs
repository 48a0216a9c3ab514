//! Graded algebras on integer-indexed bases, given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::varieties::Identity;
use crate::{q, Q};

/// A linear combination of basis vectors, keyed by index.
pub type Combination = BTreeMap<i64, Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// `e_s e_t = (t+1) e_{s+t}` on `s, t ≥ −1`.
    Witt1,
    /// `f_0 f_i = (i+1) f_i`, `f_s f_t = f_{s+t}` for `s ≥ 1`.
    LeibnizDer,
    /// `g_s g_t = (t+1) g_{s+t}` on `s, t ≥ 0`.
    DualLeibnizDer,
    /// `x^i x^j = C(i+j−1, j) x^{i+j}` on `i, j ≥ 1`.
    DualLeibnizAlg,
    /// The Witt rule restricted to indices divisible by `m − 1`.
    Witt1Mary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedAlgebra {
    name: String,
    rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Counterexample {
        indices: Vec<i64>,
        lhs: Combination,
        rhs: Combination,
    },
}

impl IndexedAlgebra {
    pub fn witt1() -> Self {
        IndexedAlgebra {
            name: "witt1".into(),
            rule: Rule::Witt1,
        }
    }

    pub fn leibniz_der() -> Self {
        IndexedAlgebra {
            name: "leibniz_der".into(),
            rule: Rule::LeibnizDer,
        }
    }

    pub fn dual_leibniz_der() -> Self {
        IndexedAlgebra {
            name: "dual_leibniz_der".into(),
            rule: Rule::DualLeibnizDer,
        }
    }

    pub fn dual_leibniz_alg() -> Self {
        IndexedAlgebra {
            name: "dual_leibniz_alg".into(),
            rule: Rule::DualLeibnizAlg,
        }
    }

    pub fn witt1_mary(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!(
                "witt1_mary needs arity at least 3, got {m}"
            )));
        }
        Ok(IndexedAlgebra {
            name: format!("witt1_mary({m})"),
            rule: Rule::Witt1Mary(m),
        })
    }

    /// Accepts `witt1`, `leibniz_der`, `dual_leibniz_der`, `dual_leibniz_alg`, `witt1_mary(m)`.
    pub fn builtin(name: &str) -> Result<Self> {
        let norm = name.trim().replace('-', "_");
        match norm.as_str() {
            "witt1" => Ok(Self::witt1()),
            "leibniz_der" => Ok(Self::leibniz_der()),
            "dual_leibniz_der" => Ok(Self::dual_leibniz_der()),
            "dual_leibniz_alg" => Ok(Self::dual_leibniz_alg()),
            _ => {
                let m = norm
                    .strip_prefix("witt1_mary(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|m| m.trim().parse().ok())
                    .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
                Self::witt1_mary(m)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Smallest valid index.
    pub fn min_index(&self) -> i64 {
        match self.rule {
            Rule::Witt1 => -1,
            Rule::LeibnizDer | Rule::DualLeibnizDer | Rule::Witt1Mary(_) => 0,
            Rule::DualLeibnizAlg => 1,
        }
    }

    pub fn is_index(&self, i: i64) -> bool {
        i >= self.min_index()
            && match self.rule {
                Rule::Witt1Mary(m) => i % (m as i64 - 1) == 0,
                _ => true,
            }
    }

    /// Valid indices in `lo..=hi`.
    pub fn indices(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&i| self.is_index(i)).collect()
    }

    fn check_index(&self, i: i64) -> Result<()> {
        if self.is_index(i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i })
        }
    }

    /// Product of two basis vectors as `(coefficient, index)` pairs.
    pub fn rule(&self, s: i64, t: i64) -> Result<Vec<(Q, i64)>> {
        self.check_index(s)?;
        self.check_index(t)?;
        let c = match self.rule {
            Rule::Witt1 | Rule::DualLeibnizDer | Rule::Witt1Mary(_) => q(t + 1),
            Rule::LeibnizDer if s == 0 => q(t + 1),
            Rule::LeibnizDer => q(1),
            Rule::DualLeibnizAlg => Q::from_integer(binomial((s + t - 1).into(), t.into())),
        };
        Ok(if c.is_zero() {
            vec![]
        } else {
            vec![(c, s + t)]
        })
    }

    pub fn basis(&self, i: i64) -> Result<Combination> {
        self.check_index(i)?;
        Ok(BTreeMap::from([(i, q(1))]))
    }

    /// Bilinear extension of [`IndexedAlgebra::rule`].
    pub fn product(&self, a: &Combination, b: &Combination) -> Result<Combination> {
        let mut out = Combination::new();
        for (s, ca) in a {
            for (t, cb) in b {
                for (c, k) in self.rule(*s, *t)? {
                    add_to(&mut out, k, &(c * ca * cb));
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a binary word with generator `z_i` sent to basis vector `indices[i]`;
    /// children are multiplied in stored order.
    fn eval_word(&self, w: &Word, indices: &[i64]) -> Result<Combination> {
        match w {
            Word::Unit => Err(Error::InvalidArgument(
                "structure-constant algebras have no unit".into(),
            )),
            Word::Gen(i) => {
                let idx = *indices
                    .get(*i as usize)
                    .ok_or(Error::UnassignedVariable(*i as usize + 1))?;
                self.basis(idx)
            }
            Word::Node(_) => match w.children() {
                [a, b] => self.product(&self.eval_word(a, indices)?, &self.eval_word(b, indices)?),
                kids => Err(Error::ArityMismatch {
                    expected: 2,
                    found: kids.len(),
                }),
            },
        }
    }

    fn eval(&self, e: &crate::Element, indices: &[i64]) -> Result<Combination> {
        let mut out = Combination::new();
        for (w, c) in e.terms() {
            for (k, v) in self.eval_word(w, indices)? {
                add_to(&mut out, k, &(v * c));
            }
        }
        Ok(out)
    }

    /// Checks a multilinear identity on every tuple of basis vectors with indices
    /// in `lo..=hi`, in lexicographic order; returns the first failure.
    pub fn check_identity(&self, id: &Identity, lo: i64, hi: i64) -> Result<CheckOutcome> {
        if !id.is_multilinear() {
            return Err(Error::InvalidArgument(
                "basis checks need a multilinear identity".into(),
            ));
        }
        let range = self.indices(lo, hi);
        for tuple in (0..id.num_vars())
            .map(|_| range.iter().copied())
            .multi_cartesian_product()
        {
            let lhs = self.eval(id.lhs(), &tuple)?;
            let rhs = self.eval(id.rhs(), &tuple)?;
            if lhs != rhs {
                return Ok(CheckOutcome::Counterexample {
                    indices: tuple,
                    lhs,
                    rhs,
                });
            }
        }
        Ok(CheckOutcome::Pass)
    }
}

fn add_to(out: &mut Combination, k: i64, c: &Q) {
    if c.is_zero() {
        return;
    }
    let entry = out.entry(k).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&k);
    }
}

/// Renders a combination with a basis symbol, e.g. `2*f3 - e0`.
pub fn format_combination(c: &Combination, symbol: &str) -> String {
    struct Show<'a>(&'a Combination, &'a str);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_empty() {
                return write!(f, "0");
            }
            for (n, (k, v)) in self.0.iter().enumerate() {
                crate::freealg::fmt_coeff_term(f, n == 0, v, &format!("{}{k}", self.1))?;
            }
            Ok(())
        }
    }
    Show(c, symbol).to_string()
}

/// `D(x^n)` for the derivation with `D(x) = x^{s+1}` of a one-generator power
/// algebra, expanding `x^n = x · x^{n−1}` by the Leibniz rule.
pub fn power_derivation_image(alg: &IndexedAlgebra, s: i64, n: i64) -> Result<Combination> {
    if n < 1 {
        return Err(Error::IndexOutOfRange { index: n });
    }
    let image_x = alg.basis(s + 1)?;
    let mut image = image_x.clone();
    for k in 2..=n {
        // D(x · x^{k−1}) = D(x) x^{k−1} + x D(x^{k−1})
        let mut next = alg.product(&image_x, &alg.basis(k - 1)?)?;
        for (i, c) in alg.product(&alg.basis(1)?, &image)? {
            add_to(&mut next, i, &c);
        }
        image = next;
    }
    Ok(image)
}

fn factorial(n: i64) -> Q {
    (1..=n).fold(q(1), |acc, k| acc * q(k))
}

/// Coefficient `c` in `g_s g_t = c · g_{s+t}` for `g_i = (i+1)! x^{i+1} ∂_x`,
/// computed through the product of the dual Leibniz algebra.
pub fn dual_leibniz_der_from_algebra(s: i64, t: i64) -> Result<Q> {
    let alg = IndexedAlgebra::dual_leibniz_alg();
    let image = power_derivation_image(&alg, s, t + 1)?;
    let lead = image.get(&(s + t + 1)).cloned().unwrap_or_else(Q::zero);
    if image.len() > usize::from(!lead.is_zero()) {
        return Err(Error::Internal(
            "derivation image is not homogeneous".into(),
        ));
    }
    Ok(factorial(s + 1) * factorial(t + 1) * lead / factorial(s + t + 1))
}
