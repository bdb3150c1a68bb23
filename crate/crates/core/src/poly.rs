//! Sparse noncommutative polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::word::Word;

/// A polynomial as a map from words to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn word(field: Field, w: Word) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(w, field.one());
        Poly { field, terms }
    }

    /// Builds a polynomial from terms, combining repeats and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(field: Field, terms: I) -> Poly {
        let mut p = Poly::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let f = self.field;
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Largest degree present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Checks that the polynomial lies in `H(n)` (the zero polynomial always does).
    pub fn require_degree(&self, n: usize) -> Result<()> {
        match self.terms.keys().map(Word::degree).find(|&d| d != n) {
            Some(found) => Err(Error::Inhomogeneous { expected: n, found }),
            None => Ok(()),
        }
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&Word::empty())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let f = self.field;
        Poly::from_terms(f, self.terms.iter().map(|(w, a)| (w.clone(), f.mul(a, c))))
    }

    /// Product in the free algebra: concatenation of words.
    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch");
        let f = self.field;
        let mut out = Poly::zero(f);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &f.mul(a, b));
            }
        }
        out
    }

    pub fn left_mul_word(&self, w: &Word) -> Poly {
        Poly::from_terms(self.field, self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())))
    }

    pub fn right_mul_word(&self, w: &Word) -> Poly {
        Poly::from_terms(self.field, self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())))
    }

    /// Splits into homogeneous components, in increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(usize, Poly)> {
        let mut parts: BTreeMap<usize, Poly> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts.entry(w.degree()).or_insert_with(|| Poly::zero(self.field)).terms.insert(w.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn parse(text: &str, field: Field) -> Result<Poly> {
        Parser::new(text, field).parse()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    field: Field,
}

impl Parser {
    fn new(text: &str, field: Field) -> Parser {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, at: 0, field }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|&(p, _)| p).unwrap_or_else(|| self.chars.last().map_or(0, |&(p, _)| p + 1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.at += 1;
        }
        s
    }

    fn parse(mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.field);
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        if self.chars.len() == 1 && self.chars[0].1 == '0' {
            return Ok(out);
        }
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.at += 1;
                    false
                }
                Some('-') => {
                    self.at += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let mut coeff = self.field.one();
            let digits = self.take_while(|c| c.is_ascii_digit());
            if !digits.is_empty() {
                let mut lit = digits;
                if self.peek() == Some('/') {
                    self.at += 1;
                    let den = self.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        return Err(self.err("expected denominator"));
                    }
                    lit = format!("{lit}/{den}");
                }
                coeff = self.field.parse_scalar(&lit)?;
                let starred = self.peek() == Some('*');
                if starred {
                    self.at += 1;
                }
                if !starred && !matches!(self.peek(), Some('x' | 'y' | 'z')) {
                    if negative {
                        coeff = self.field.neg(&coeff);
                    }
                    out.add_term(Word::empty(), &coeff);
                    continue;
                }
            }
            let word = self.take_while(|c| matches!(c, 'x' | 'y' | 'z'));
            if word.is_empty() {
                return Err(self.err("expected a word over x, y, z"));
            }
            let w: Word = word.parse()?;
            if negative {
                coeff = self.field.neg(&coeff);
            }
            out.add_term(w, &coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, f: Field) -> Poly {
        Poly::parse(s, f).unwrap()
    }

    #[test]
    fn parse_examples() {
        let q = Field::Rational;
        let a = p("xy - yx", q);
        assert_eq!(a.coefficient(&"xy".parse().unwrap()), q.one());
        assert_eq!(a.coefficient(&"yx".parse().unwrap()), q.from_i64(-1));
        assert!(p("x + x", Field::GF2).is_zero());
        let f3 = Field::prime(3).unwrap();
        let b = p("2*zz + z", f3);
        assert_eq!(b.coefficient(&"zz".parse().unwrap()), Scalar::Mod(2));
        assert_eq!(b.coefficient(&"z".parse().unwrap()), Scalar::Mod(1));
        assert_eq!(p(" 2 zz+z ", f3), b);
        assert_eq!(p("-1/2*xy + 3x", q).to_string(), "3*x - 1/2*xy");
    }

    #[test]
    fn parse_errors() {
        assert!(Poly::parse("x + ", Field::GF2).is_err());
        assert!(Poly::parse("xq", Field::GF2).is_err());
        assert!(Poly::parse("x y", Field::GF2).is_ok());
        assert!(matches!(Poly::parse("1/2x", Field::GF2), Err(Error::BadCoefficient(_))));
        assert!(Poly::parse("3", Field::GF2).unwrap().has_constant_term());
        assert!(Poly::parse("3x", Field::Prime { p: 5 }).is_ok());
    }

    #[test]
    fn products() {
        let f = Field::GF2;
        assert_eq!(p("x", f).mul(&p("y", f)), p("xy", f));
        let s = p("x+y", f);
        let sq = s.mul(&s);
        assert_eq!(sq, p("xx+xy+yx+yy", f));
        assert!(sq.sub(&s.mul(&s)).is_zero());
    }

    #[test]
    fn components() {
        let f = Field::GF2;
        let a = p("x + xy", f);
        let parts = a.homogeneous_components();
        assert_eq!(parts, vec![(1, p("x", f)), (2, p("xy", f))]);
        assert!(Poly::zero(f).homogeneous_components().is_empty());
    }

    #[test]
    fn display_round_trip() {
        let f = Field::prime(5).unwrap();
        let a = p("3xyz - zz + 4*x", f);
        assert_eq!(Poly::parse(&a.to_string(), f).unwrap(), a);
    }
}
