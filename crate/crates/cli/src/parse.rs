//! Text grammar for words, elements, derivations and identities.
//!
//! ```text
//! word        := "1" | "x" | "x<i>" | "(" word word* ")"
//! coeff       := integer | integer "/" integer
//! term        := coeff "*" word | coeff | word
//! element     := ["+" | "-"] term (("+" | "-") term)*
//! derivation  := "D[" element ("," element)* "]" | element-with-d-suffixes
//! identity    := element ["=" element] | builtin name
//! ```
//!
//! In the distributed derivation form every term carries a suffix `d<i>`,
//! as in `2*((x1 x1) x1) d1 - x1 d2`. A bare `x` means `x1`.

use std::fmt;

use lsder_core::freealg::normalize;
use lsder_core::{Element, Identity, RawWord, Signature, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// Failure while turning text into an algebraic object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax(SyntaxError),
    /// Well-formed text that does not fit the signature.
    Domain(lsder_core::Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax(e) => e.fmt(f),
            ParseError::Domain(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<SyntaxError> for ParseError {
    fn from(e: SyntaxError) -> Self {
        ParseError::Syntax(e)
    }
}

impl From<lsder_core::Error> for ParseError {
    fn from(e: lsder_core::Error) -> Self {
        ParseError::Domain(e)
    }
}

/// Unnormalized terms, optionally tagged with a derivation index.
type RawTerms = Vec<(Q, RawWord, Option<usize>)>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected `{c}`, found `{found}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn coefficient(&mut self) -> Result<Option<Q>, SyntaxError> {
        self.skip_ws();
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("ascii digits");
        let save = self.pos;
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let Some(den) = self.digits() else {
                return self.err("expected a denominator after `/`");
            };
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            return Ok(Some(Q::new(num, den)));
        }
        self.pos = save;
        Ok(Some(Q::from_integer(num)))
    }

    /// A generator index after the letter `x` (or `d`), 1-based in the text.
    fn index_after(&mut self, letter: char) -> Result<Option<usize>, SyntaxError> {
        let at = self.pos;
        let Some(d) = self.digits() else {
            return Ok(None);
        };
        match d.parse::<usize>() {
            Ok(0) | Err(_) => {
                self.pos = at;
                self.err(format!("`{letter}` indices start at 1"))
            }
            Ok(i) => Ok(Some(i - 1)),
        }
    }

    fn word(&mut self) -> Result<RawWord, SyntaxError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let mut children = Vec::new();
                while !self.eat(')') {
                    if self.at_end() {
                        return self.err("unclosed `(`");
                    }
                    children.push(self.word()?);
                }
                if children.is_empty() {
                    self.pos -= 1;
                    return self.err("empty product");
                }
                Ok(RawWord::Node(children))
            }
            Some('x') => {
                self.pos += 1;
                Ok(RawWord::Gen(self.index_after('x')?.unwrap_or(0)))
            }
            Some('1') => {
                let at = self.pos;
                self.pos += 1;
                if matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                    self.pos = at;
                    return self.err("expected a word");
                }
                Ok(RawWord::Unit)
            }
            Some(c) => self.err(format!("expected a word, found `{c}`")),
            None => self.err("expected a word, found end of input"),
        }
    }

    /// One signed term; a lone coefficient multiplies the unit.
    fn term(&mut self, sign: Q) -> Result<(Q, RawWord), SyntaxError> {
        match self.coefficient()? {
            Some(c) => {
                if self.eat('*') {
                    Ok((sign * c, self.word()?))
                } else {
                    Ok((sign * c, RawWord::Unit))
                }
            }
            None => Ok((sign, self.word()?)),
        }
    }

    fn derivation_suffix(&mut self) -> Result<Option<usize>, SyntaxError> {
        if self.peek() != Some('d') {
            return Ok(None);
        }
        self.pos += 1;
        match self.index_after('d')? {
            Some(i) => Ok(Some(i)),
            None => self.err("expected an index after `d`"),
        }
    }

    /// Terms up to a character in `stop` or the end of input.
    fn terms(&mut self, stop: &[char]) -> Result<RawTerms, SyntaxError> {
        let mut out = Vec::new();
        let mut sign = if self.eat('-') {
            -Q::one()
        } else {
            self.eat('+');
            Q::one()
        };
        loop {
            let (c, w) = self.term(sign)?;
            let d = self.derivation_suffix()?;
            out.push((c, w, d));
            sign = if self.eat('+') {
                Q::one()
            } else if self.eat('-') {
                -Q::one()
            } else {
                match self.peek() {
                    None => break,
                    Some(c) if stop.contains(&c) => break,
                    Some(c) => {
                        return self.err(format!("expected `+`, `-` or end of input, found `{c}`"))
                    }
                }
            };
        }
        Ok(out)
    }
}

fn build(
    sig: &Signature,
    terms: &[(Q, RawWord, Option<usize>)],
) -> Result<Element, lsder_core::Error> {
    let mut e = Element::zero();
    for (c, w, _) in terms {
        if c.is_zero() {
            continue;
        }
        e.add_term(normalize(sig, w)?, c.clone());
    }
    Ok(e)
}

fn undecorated(p: &Parser<'_>, terms: &RawTerms) -> Result<(), SyntaxError> {
    if terms.iter().any(|t| t.2.is_some()) {
        return Err(SyntaxError {
            pos: p.pos,
            message: "`d<i>` suffix outside a derivation".into(),
        });
    }
    Ok(())
}

/// Parses an element and normalizes it in `sig`.
pub fn parse_element(text: &str, sig: &Signature) -> Result<Element, ParseError> {
    let mut p = Parser::new(text);
    let terms = p.terms(&[])?;
    undecorated(&p, &terms)?;
    p.finish()?;
    Ok(build(sig, &terms)?)
}

/// Parses `D[f1, …, fn]` or the distributed form `f1 d1 + … + fn dn`.
pub fn parse_derivation(text: &str, sig: &Signature) -> Result<Vec<Element>, ParseError> {
    let n = sig.num_generators;
    let mut p = Parser::new(text);
    if p.eat('D') {
        p.expect('[')?;
        let mut coords = Vec::new();
        loop {
            let at = p.pos;
            let terms = p.terms(&[',', ']'])?;
            undecorated(&p, &terms)?;
            if coords.len() == n {
                return Err(lsder_core::Error::WrongArgumentCount {
                    expected: n,
                    found: n + 1 + text[at..].matches(',').count(),
                }
                .into());
            }
            coords.push(build(sig, &terms)?);
            if p.eat(']') {
                break;
            }
            p.expect(',')?;
        }
        p.finish()?;
        if coords.len() != n {
            return Err(lsder_core::Error::WrongArgumentCount {
                expected: n,
                found: coords.len(),
            }
            .into());
        }
        return Ok(coords);
    }
    if p.peek() == Some('0') {
        let save = p.pos;
        p.pos += 1;
        if p.at_end() {
            return Ok(vec![Element::zero(); n]);
        }
        p.pos = save;
    }
    let terms = p.terms(&[])?;
    p.finish()?;
    let mut coords = vec![Element::zero(); n];
    for (c, w, d) in terms {
        let Some(i) = d else {
            return Err(SyntaxError {
                pos: 0,
                message: "every term of a derivation needs a `d<i>` suffix (or use `D[...]`)"
                    .into(),
            }
            .into());
        };
        if i >= n {
            return Err(lsder_core::Error::UnknownGenerator {
                index: i + 1,
                available: n,
            }
            .into());
        }
        if !c.is_zero() {
            coords[i].add_term(normalize(sig, &w)?, c);
        }
    }
    Ok(coords)
}

fn max_generator(w: &RawWord) -> usize {
    match w {
        RawWord::Unit => 0,
        RawWord::Gen(i) => i + 1,
        RawWord::Node(c) => c.iter().map(max_generator).max().unwrap_or(0),
    }
}

/// Parses `lhs = rhs`, a single expression meaning `expr = 0`, or a built-in
/// name (`novikov`, `left-symmetric`, `jacobi`).
///
/// The variables are `x1..xk`; `shape` supplies arity, symmetry and unit.
pub fn parse_identity(text: &str, shape: &Signature) -> Result<Identity, ParseError> {
    if let Some(id) = Identity::by_name(text.trim()) {
        return Ok(id);
    }
    let mut p = Parser::new(text);
    let lhs = p.terms(&['='])?;
    undecorated(&p, &lhs)?;
    let rhs = if p.eat('=') {
        let r = p.terms(&[])?;
        undecorated(&p, &r)?;
        r
    } else {
        Vec::new()
    };
    p.finish()?;
    let k = lhs
        .iter()
        .chain(&rhs)
        .map(|t| max_generator(&t.1))
        .max()
        .unwrap_or(0)
        .max(1);
    let sig = shape.with_generators(k);
    Ok(Identity::new(k, build(&sig, &lhs)?, build(&sig, &rhs)?))
}

/// Parses `lo..hi` (inclusive).
pub fn parse_range(text: &str) -> Result<(i64, i64), SyntaxError> {
    let err = |message: &str| SyntaxError {
        pos: 0,
        message: message.into(),
    };
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| err("expected `lo..hi`"))?;
    let lo = lo.trim().parse().map_err(|_| err("bad lower bound"))?;
    let hi = hi.trim().parse().map_err(|_| err("bad upper bound"))?;
    if lo > hi {
        return Err(err("empty range"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use lsder_core::{bracket, frac, q};

    fn sym(m: usize) -> Signature {
        Signature::one_var_symmetric(m)
    }

    #[test]
    fn words_and_coefficients() {
        let s = sym(2);
        let x = Element::generator(0);
        let xx = bracket(&s, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(parse_element("(x1 x1)", &s).unwrap(), xx);
        assert_eq!(parse_element("  ( x x )", &s).unwrap(), xx);
        let e = parse_element("3/2*(x1 (x1 x1)) + x1", &s).unwrap();
        let mut expected = x.clone();
        expected += &bracket(&s, &[x.clone(), xx]).unwrap().scale(&frac(3, 2));
        assert_eq!(e, expected);
        assert_eq!(parse_element("x1 - x1", &s).unwrap(), Element::zero());
        assert_eq!(parse_element("-2*x1", &s).unwrap(), x.scale(&q(-2)));
        assert_eq!(parse_element("0", &s).unwrap(), Element::zero());
    }

    #[test]
    fn arity_and_generator_errors() {
        let s = sym(2);
        assert_eq!(
            parse_element("(x1 x1 x1)", &s),
            Err(ParseError::Domain(lsder_core::Error::ArityMismatch {
                expected: 2,
                found: 3
            }))
        );
        assert!(matches!(
            parse_element("x2", &s),
            Err(ParseError::Domain(_))
        ));
        assert!(matches!(
            parse_element("1", &s),
            Err(ParseError::Domain(lsder_core::Error::UnitNotAllowed))
        ));
        let unital = Signature::new(2, true, true, 1).unwrap();
        assert_eq!(
            parse_element("2", &unital).unwrap(),
            Element::unit().scale(&q(2))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let s = sym(2);
        let Err(ParseError::Syntax(e)) = parse_element("(x1 x1", &s) else {
            panic!()
        };
        assert_eq!(e.pos, 6);
        let Err(ParseError::Syntax(e)) = parse_element("x1 + * x1", &s) else {
            panic!()
        };
        assert_eq!(e.pos, 5);
        assert!(matches!(
            parse_element("x0", &s),
            Err(ParseError::Syntax(_))
        ));
        assert!(matches!(
            parse_element("1/0*x1", &s),
            Err(ParseError::Syntax(_))
        ));
        assert!(matches!(
            parse_element("x1 d1", &s),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn derivation_forms_agree() {
        let s = Signature::new(2, true, false, 2).unwrap();
        let a = parse_derivation("D[(x1 x1), -x2]", &s).unwrap();
        let b = parse_derivation("(x1 x1) d1 - x2 d2", &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_derivation("0", &s).unwrap(), vec![Element::zero(); 2]);
        assert!(parse_derivation("D[x1]", &s).is_err());
        assert!(parse_derivation("x1 d3", &s).is_err());
        assert!(parse_derivation("x1", &s).is_err());
    }

    #[test]
    fn identities() {
        let shape = Signature::new(2, false, false, 1).unwrap();
        let id = parse_identity("((x1 x2) x3) = ((x1 x3) x2)", &shape).unwrap();
        assert_eq!(id.num_vars(), 3);
        assert_eq!(id.polynomial(), Identity::novikov().polynomial());
        let v = parse_identity("(x1 (x1 (x1 x1)))", &sym(2)).unwrap();
        assert_eq!(v.num_vars(), 1);
        assert!(v.rhs().is_zero());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1..12").unwrap(), (-1, 12));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("3").is_err());
    }
}
