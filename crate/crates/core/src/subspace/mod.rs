//! Subspaces of a single graded component `H(n)`.
//!
//! Three representations are used: a set of monomials, a reduced echelon basis, and a
//! co-monomial form (everything except an excluded word set, plus a correction basis
//! supported inside the excluded set). Values are normalized so that equal subspaces
//! have equal representations.

pub mod dense;
pub mod echelon;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;
use crate::word::{all_words, pow3, Word};

pub use echelon::{nullspace, Echelon, Row};

/// Upper bound on explicitly enumerated words or rows in a single operation.
pub const ENUMERATION_CAP: usize = 1 << 22;

#[derive(Clone, Debug)]
pub enum Repr {
    Monomials(BTreeSet<Word>),
    Echelon(Echelon<Word>),
    CoMonomial { excluded: BTreeSet<Word>, correction: Echelon<Word> },
}

#[derive(Clone, Debug)]
pub struct GradedSubspace {
    field: Field,
    degree: usize,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementRule {
    /// Set difference when both sides are monomial; echelon-greedy otherwise.
    MonomialLex,
    EchelonGreedy,
}

fn unit(field: Field, w: &Word) -> Row<Word> {
    vec![(w.clone(), field.one())]
}

fn poly_row(p: &Poly) -> Row<Word> {
    p.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect()
}

fn restrict(row: &[(Word, Scalar)], keep: &BTreeSet<Word>) -> Row<Word> {
    row.iter().filter(|(w, _)| keep.contains(w)).cloned().collect()
}

fn row_poly(field: Field, row: &[(Word, Scalar)]) -> Poly {
    Poly::from_terms(field, row.iter().cloned())
}

impl GradedSubspace {
    pub fn zero(field: Field, degree: usize) -> Self {
        GradedSubspace { field, degree, repr: Repr::Monomials(BTreeSet::new()) }
    }

    /// The whole component `H(n)`.
    pub fn full(field: Field, degree: usize) -> Self {
        GradedSubspace {
            field,
            degree,
            repr: Repr::CoMonomial { excluded: BTreeSet::new(), correction: Echelon::new(field) },
        }
    }

    pub fn monomials<I: IntoIterator<Item = Word>>(field: Field, degree: usize, words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if let Some(w) = words.iter().find(|w| w.degree() != degree) {
            return Err(Error::Inhomogeneous { expected: degree, found: w.degree() });
        }
        Ok(GradedSubspace { field, degree, repr: Repr::Monomials(words) })
    }

    /// Span of homogeneous vectors of degree `n`.
    pub fn span(field: Field, vectors: &[Poly], degree: usize) -> Result<Self> {
        for v in vectors {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            v.require_degree(degree)?;
        }
        if vectors.iter().all(|v| v.len() <= 1) {
            let words = vectors.iter().filter_map(|v| v.terms().keys().next().cloned());
            return GradedSubspace::monomials(field, degree, words);
        }
        Ok(Self::from_rows(field, degree, vectors.iter().map(poly_row)))
    }

    /// Span of coordinate rows (not necessarily independent).
    pub fn from_rows<I: IntoIterator<Item = Row<Word>>>(field: Field, degree: usize, rows: I) -> Self {
        let e = Echelon::from_rows(field, rows);
        Self::finite_from_rref(field, degree, e.into_rref())
    }

    fn finite_from_rref(field: Field, degree: usize, rows: Vec<Row<Word>>) -> Self {
        if rows.iter().all(|r| r.len() == 1) {
            let words = rows.into_iter().map(|r| r.into_iter().next().unwrap().0).collect();
            return GradedSubspace { field, degree, repr: Repr::Monomials(words) };
        }
        GradedSubspace { field, degree, repr: Repr::Echelon(Echelon::from_echelon_rows(field, rows)) }
    }

    /// Co-monomial subspace: all words outside `excluded`, plus the span of `correction`
    /// (rows are restricted to `excluded`).
    pub fn comonomial<I: IntoIterator<Item = Row<Word>>>(
        field: Field,
        degree: usize,
        excluded: BTreeSet<Word>,
        correction: I,
    ) -> Result<Self> {
        if let Some(w) = excluded.iter().find(|w| w.degree() != degree) {
            return Err(Error::Inhomogeneous { expected: degree, found: w.degree() });
        }
        let rows = correction.into_iter().map(|r| restrict(&r, &excluded));
        let e = Echelon::from_rows(field, rows);
        Ok(Self::co_from_rref(field, degree, excluded, e.into_rref()))
    }

    fn co_from_rref(field: Field, degree: usize, mut excluded: BTreeSet<Word>, rows: Vec<Row<Word>>) -> Self {
        let mut kept = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() == 1 {
                excluded.remove(&r[0].0);
            } else {
                kept.push(r);
            }
        }
        GradedSubspace {
            field,
            degree,
            repr: Repr::CoMonomial { excluded, correction: Echelon::from_echelon_rows(field, kept) },
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn repr_name(&self) -> &'static str {
        match self.repr {
            Repr::Monomials(_) => "monomials",
            Repr::Echelon(_) => "echelon",
            Repr::CoMonomial { .. } => "comonomial",
        }
    }

    pub fn is_monomial(&self) -> bool {
        match &self.repr {
            Repr::Monomials(_) => true,
            Repr::Echelon(_) => false,
            Repr::CoMonomial { correction, .. } => correction.rank() == 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.repr, Repr::CoMonomial { .. })
    }

    /// The monomials of a `Monomials` representation.
    pub fn words(&self) -> Option<&BTreeSet<Word>> {
        match &self.repr {
            Repr::Monomials(w) => Some(w),
            _ => None,
        }
    }

    pub fn excluded(&self) -> Option<&BTreeSet<Word>> {
        match &self.repr {
            Repr::CoMonomial { excluded, .. } => Some(excluded),
            _ => None,
        }
    }

    pub fn correction_rows(&self) -> &[Row<Word>] {
        match &self.repr {
            Repr::CoMonomial { correction, .. } => correction.rows(),
            Repr::Echelon(e) => e.rows(),
            Repr::Monomials(_) => &[],
        }
    }

    pub fn dim(&self) -> BigUint {
        match &self.repr {
            Repr::Monomials(w) => BigUint::from(w.len()),
            Repr::Echelon(e) => BigUint::from(e.rank()),
            Repr::CoMonomial { excluded, correction } => {
                pow3(self.degree) - BigUint::from(excluded.len()) + BigUint::from(correction.rank())
            }
        }
    }

    pub fn dim_usize(&self) -> Option<usize> {
        self.dim().to_usize()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Monomials(w) => w.is_empty(),
            Repr::Echelon(e) => e.rank() == 0,
            Repr::CoMonomial { .. } => false,
        }
    }

    /// Explicit basis rows of a finite representation.
    pub fn finite_rows(&self) -> Option<Vec<Row<Word>>> {
        match &self.repr {
            Repr::Monomials(w) => Some(w.iter().map(|w| unit(self.field, w)).collect()),
            Repr::Echelon(e) => Some(e.rows().to_vec()),
            Repr::CoMonomial { .. } => None,
        }
    }

    /// Explicit basis, enumerating all words when co-monomial (small degrees only).
    pub fn basis(&self, limit: usize) -> Result<Vec<Poly>> {
        let dim = self.dim();
        if dim > BigUint::from(limit) {
            return Err(Error::TooLarge(format!("basis of dimension {dim}")));
        }
        Ok(self.explicit_rows()?.iter().map(|r| row_poly(self.field, r)).collect())
    }

    fn explicit_rows(&self) -> Result<Vec<Row<Word>>> {
        match &self.repr {
            Repr::CoMonomial { excluded, correction } => {
                if pow3(self.degree) > BigUint::from(ENUMERATION_CAP) {
                    return Err(Error::TooLarge(format!("enumerating H({})", self.degree)));
                }
                let mut rows: Vec<Row<Word>> =
                    all_words(self.degree).filter(|w| !excluded.contains(w)).map(|w| unit(self.field, &w)).collect();
                rows.extend(correction.rows().iter().cloned());
                Ok(rows)
            }
            _ => Ok(self.finite_rows().unwrap()),
        }
    }

    fn check_same(&self, other: &GradedSubspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    /// Membership of a coordinate vector.
    pub fn contains_row(&self, v: &[(Word, Scalar)]) -> bool {
        match &self.repr {
            Repr::Monomials(w) => v.iter().all(|(k, c)| c.is_zero() || w.contains(k)),
            Repr::Echelon(e) => e.contains(v),
            Repr::CoMonomial { excluded, correction } => correction.contains(&restrict(v, excluded)),
        }
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        f.require_degree(self.degree)?;
        Ok(self.contains_row(&poly_row(f)))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_sub(&self, other: &GradedSubspace) -> Result<bool> {
        Ok(self.find_not_contained(other)?.is_none())
    }

    /// A vector of `other` outside `self`, if any.
    pub fn find_not_contained(&self, other: &GradedSubspace) -> Result<Option<Poly>> {
        self.check_same(other)?;
        let f = self.field;
        match (&self.repr, &other.repr) {
            (_, Repr::Monomials(_)) | (_, Repr::Echelon(_)) => {
                for r in other.finite_rows().unwrap() {
                    if !self.contains_row(&r) {
                        return Ok(Some(row_poly(f, &r)));
                    }
                }
                Ok(None)
            }
            (Repr::CoMonomial { excluded: xs, correction: cs }, Repr::CoMonomial { excluded: xo, correction: co }) => {
                // Canonical forms have no unit rows, so a word excluded here but not
                // there is a witness.
                if let Some(w) = xs.iter().find(|w| !xo.contains(*w)) {
                    return Ok(Some(Poly::word(f, w.clone())));
                }
                for r in co.rows() {
                    if !cs.contains(&restrict(r, xs)) {
                        return Ok(Some(row_poly(f, r)));
                    }
                }
                Ok(None)
            }
            (_, Repr::CoMonomial { excluded, .. }) => {
                if other.dim() > self.dim() {
                    // Some word outside the excluded set must escape.
                    if pow3(self.degree) <= BigUint::from(ENUMERATION_CAP) {
                        for w in all_words(self.degree).filter(|w| !excluded.contains(w)) {
                            if !self.contains_row(&unit(f, &w)) {
                                return Ok(Some(Poly::word(f, w)));
                            }
                        }
                    }
                    return Err(Error::TooLarge("witness search in a large component".into()));
                }
                for r in other.explicit_rows()? {
                    if !self.contains_row(&r) {
                        return Ok(Some(row_poly(f, &r)));
                    }
                }
                Ok(None)
            }
        }
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_same(other)?;
        let (f, n) = (self.field, self.degree);
        match (&self.repr, &other.repr) {
            (Repr::Monomials(a), Repr::Monomials(b)) => {
                Ok(GradedSubspace { field: f, degree: n, repr: Repr::Monomials(a.union(b).cloned().collect()) })
            }
            (Repr::CoMonomial { excluded: xa, correction: ca }, Repr::CoMonomial { excluded: xb, correction: cb }) => {
                let x: BTreeSet<Word> = xa.intersection(xb).cloned().collect();
                let rows = ca.rows().iter().chain(cb.rows()).map(|r| restrict(r, &x)).collect::<Vec<_>>();
                GradedSubspace::comonomial(f, n, x, rows)
            }
            (Repr::CoMonomial { excluded, correction }, _) | (_, Repr::CoMonomial { excluded, correction }) => {
                let finite = if self.is_finite() { self } else { other };
                let mut rows: Vec<Row<Word>> = correction.rows().to_vec();
                rows.extend(finite.finite_rows().unwrap().iter().map(|r| restrict(r, excluded)));
                GradedSubspace::comonomial(f, n, excluded.clone(), rows)
            }
            _ => {
                let mut rows = self.finite_rows().unwrap();
                rows.extend(other.finite_rows().unwrap());
                Ok(GradedSubspace::from_rows(f, n, rows))
            }
        }
    }

    /// `self ∩ span(coords) ` for a co-monomial space, as a finite space.
    fn restrict_to_span(&self, coords: &BTreeSet<Word>) -> GradedSubspace {
        match &self.repr {
            Repr::CoMonomial { excluded, correction } => {
                let mut rows: Vec<Row<Word>> =
                    coords.iter().filter(|w| !excluded.contains(*w)).map(|w| unit(self.field, w)).collect();
                rows.extend(correction.rows().iter().cloned());
                GradedSubspace::from_rows(self.field, self.degree, rows)
            }
            _ => unreachable!("restrict_to_span on a finite space"),
        }
    }

    fn support(&self) -> BTreeSet<Word> {
        match &self.repr {
            Repr::Monomials(w) => w.clone(),
            Repr::Echelon(e) => e.rows().iter().flat_map(|r| r.iter().map(|(w, _)| w.clone())).collect(),
            Repr::CoMonomial { .. } => unreachable!("support of a co-monomial space"),
        }
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_same(other)?;
        let (f, n) = (self.field, self.degree);
        match (&self.repr, &other.repr) {
            (Repr::Monomials(a), Repr::Monomials(b)) => {
                Ok(GradedSubspace { field: f, degree: n, repr: Repr::Monomials(a.intersection(b).cloned().collect()) })
            }
            (Repr::CoMonomial { excluded: xa, .. }, Repr::CoMonomial { excluded: xb, .. }) => {
                let x: BTreeSet<Word> = xa.union(xb).cloned().collect();
                let i = zassenhaus(&self.restrict_to_span(&x), &other.restrict_to_span(&x));
                let rows = i.finite_rows().unwrap();
                GradedSubspace::comonomial(f, n, x, rows)
            }
            (Repr::CoMonomial { excluded, .. }, _) | (_, Repr::CoMonomial { excluded, .. }) => {
                let (co, finite) = if self.is_finite() { (other, self) } else { (self, other) };
                let mut coords = finite.support();
                coords.extend(excluded.iter().cloned());
                Ok(zassenhaus(&co.restrict_to_span(&coords), finite))
            }
            _ => Ok(zassenhaus(self, other)),
        }
    }

    /// Product `A·B ⊆ H(a+b)`.
    pub fn product(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = self.field;
        let n = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return Ok(GradedSubspace::zero(f, n));
        }
        match (&self.repr, &other.repr) {
            (Repr::Monomials(a), Repr::Monomials(b)) => {
                check_size(a.len().saturating_mul(b.len()))?;
                let words = a.iter().flat_map(|u| b.iter().map(move |v| u.concat(v))).collect();
                Ok(GradedSubspace { field: f, degree: n, repr: Repr::Monomials(words) })
            }
            (Repr::CoMonomial { .. }, _) | (_, Repr::CoMonomial { .. }) => self.product_comonomial(other),
            _ => {
                let (ra, rb) = (self.finite_rows().unwrap(), other.finite_rows().unwrap());
                check_size(ra.len().saturating_mul(rb.len()))?;
                let rows = ra.iter().flat_map(|a| rb.iter().map(move |b| tensor(f, a, b)));
                Ok(GradedSubspace::from_rows(f, n, rows))
            }
        }
    }

    fn product_comonomial(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        // A·B has excluded set (X_A × M(b)) ∪ (M(a) × X_B), with a finite factor
        // treated as a co-monomial space excluding all of M(degree).
        let f = self.field;
        let n = self.degree + other.degree;
        let parts = |s: &GradedSubspace| -> Result<(Vec<Word>, Vec<Row<Word>>)> {
            match &s.repr {
                Repr::CoMonomial { excluded, correction } => {
                    Ok((excluded.iter().cloned().collect(), correction.rows().to_vec()))
                }
                _ => {
                    if pow3(s.degree) > BigUint::from(ENUMERATION_CAP) {
                        return Err(Error::TooLarge("product with a large finite factor".into()));
                    }
                    Ok((all_words(s.degree).collect(), s.finite_rows().unwrap()))
                }
            }
        };
        let (xa, ca) = parts(self)?;
        let (xb, cb) = parts(other)?;
        // Word lists of a factor are only enumerated when the other side needs them.
        let words_of = |degree: usize, needed: bool| -> Result<Vec<Word>> {
            if !needed {
                return Ok(Vec::new());
            }
            if pow3(degree) > BigUint::from(ENUMERATION_CAP) {
                return Err(Error::TooLarge(format!("enumerating H({degree}) for a product")));
            }
            Ok(all_words(degree).collect())
        };
        let ma = words_of(self.degree, !xb.is_empty())?;
        let mb = words_of(other.degree, !xa.is_empty())?;
        check_size(xa.len().saturating_mul(mb.len()).saturating_add(ma.len().saturating_mul(xb.len())))?;
        let xa_set: BTreeSet<&Word> = xa.iter().collect();
        let xb_set: BTreeSet<&Word> = xb.iter().collect();
        let mut excluded = BTreeSet::new();
        for u in &xa {
            for v in &mb {
                excluded.insert(u.concat(v));
            }
        }
        for u in &ma {
            for v in &xb {
                excluded.insert(u.concat(v));
            }
        }
        let (ma, mb) = (&ma, &mb);
        // Correction: (A ⊗ B) restricted to the excluded set. Spanned by
        // c_A ⊗ w (w ∉ X_B), w ⊗ c_B (w ∉ X_A), and c_A ⊗ c_B.
        let mut rows: Vec<Row<Word>> = Vec::new();
        for a in &ca {
            for v in mb.iter().filter(|v| !xb_set.contains(v)) {
                rows.push(tensor(f, a, &unit(f, v)));
                check_size(rows.len())?;
            }
            for b in &cb {
                rows.push(tensor(f, a, b));
            }
        }
        for b in &cb {
            for u in ma.iter().filter(|u| !xa_set.contains(u)) {
                rows.push(tensor(f, &unit(f, u), b));
                check_size(rows.len())?;
            }
        }
        check_size(rows.len())?;
        GradedSubspace::comonomial(f, n, excluded, rows)
    }

    /// A complement `C` of `self` inside `within`: `self ∩ C = 0`, `self + C = within`.
    pub fn complement(&self, within: &GradedSubspace, rule: ComplementRule) -> Result<GradedSubspace> {
        within.check_same(self)?;
        if !within.contains_sub(self)? {
            return Err(Error::NotContained);
        }
        let (f, n) = (self.field, self.degree);
        match (&self.repr, &within.repr) {
            (Repr::Monomials(a), Repr::Monomials(b)) if rule == ComplementRule::MonomialLex => {
                Ok(GradedSubspace { field: f, degree: n, repr: Repr::Monomials(b.difference(a).cloned().collect()) })
            }
            (_, Repr::CoMonomial { excluded: xb, .. }) => {
                let mut y = xb.clone();
                match &self.repr {
                    Repr::CoMonomial { excluded: xa, .. } => {
                        y.extend(xa.iter().cloned());
                        let a = self.restrict_to_span(&y);
                        let b = within.restrict_to_span(&y);
                        Ok(greedy_complement(&a, &b))
                    }
                    _ => {
                        y.extend(self.support());
                        let b = within.restrict_to_span(&y);
                        let c = greedy_complement(self, &b);
                        GradedSubspace::comonomial(f, n, y, c.finite_rows().unwrap())
                    }
                }
            }
            (Repr::CoMonomial { .. }, _) => {
                let rows = self.explicit_rows()?;
                let a = GradedSubspace::from_rows(f, n, rows);
                Ok(greedy_complement(&a, within))
            }
            _ => Ok(greedy_complement(self, within)),
        }
    }

    pub fn to_json(&self) -> SubspaceJson {
        let words = |s: &BTreeSet<Word>| s.iter().map(Word::to_string).collect::<Vec<_>>();
        let rows = |rs: &[Row<Word>]| {
            rs.iter()
                .map(|r| r.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let (repr, w, x, r) = match &self.repr {
            Repr::Monomials(m) => ("monomials", words(m), vec![], vec![]),
            Repr::Echelon(e) => ("echelon", vec![], vec![], rows(e.rows())),
            Repr::CoMonomial { excluded, correction } => {
                ("comonomial", vec![], words(excluded), rows(correction.rows()))
            }
        };
        SubspaceJson {
            format: 1,
            field: self.field,
            degree: self.degree,
            repr: repr.into(),
            words: w,
            excluded: x,
            rows: r,
        }
    }

    pub fn from_json(j: &SubspaceJson) -> Result<GradedSubspace> {
        if j.format != 1 {
            return Err(Error::Format(format!("unsupported subspace format {}", j.format)));
        }
        j.field.validate()?;
        let f = j.field;
        let parse_words = |ws: &[String]| -> Result<BTreeSet<Word>> { ws.iter().map(|w| w.parse()).collect() };
        let parse_rows = || -> Result<Vec<Row<Word>>> {
            j.rows
                .iter()
                .map(|r| r.iter().map(|(w, c)| Ok((w.parse::<Word>()?, f.parse_scalar(c)?))).collect())
                .collect()
        };
        let check = |rows: &[Row<Word>]| -> Result<()> {
            match rows.iter().flatten().find(|(w, _)| w.degree() != j.degree) {
                Some((w, _)) => Err(Error::Inhomogeneous { expected: j.degree, found: w.degree() }),
                None => Ok(()),
            }
        };
        match j.repr.as_str() {
            "monomials" => GradedSubspace::monomials(f, j.degree, parse_words(&j.words)?),
            "echelon" => {
                let rows = parse_rows()?;
                check(&rows)?;
                Ok(GradedSubspace::from_rows(f, j.degree, rows))
            }
            "comonomial" => {
                let rows = parse_rows()?;
                check(&rows)?;
                GradedSubspace::comonomial(f, j.degree, parse_words(&j.excluded)?, rows)
            }
            other => Err(Error::Format(format!("unknown representation `{other}`"))),
        }
    }
}

impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.degree != other.degree {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Monomials(a), Repr::Monomials(b)) => a == b,
            (Repr::Echelon(a), Repr::Echelon(b)) => a.rows() == b.rows(),
            (Repr::CoMonomial { excluded: xa, correction: ca }, Repr::CoMonomial { excluded: xb, correction: cb }) => {
                xa == xb && ca.rows() == cb.rows()
            }
            _ => false,
        }
    }
}

/// Serialized form of a [`GradedSubspace`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubspaceJson {
    pub format: u32,
    pub field: Field,
    pub degree: usize,
    pub repr: String,
    #[serde(default)]
    pub words: Vec<String>,
    #[serde(default)]
    pub excluded: Vec<String>,
    #[serde(default)]
    pub rows: Vec<Vec<(String, String)>>,
}

fn check_size(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{n} generators")));
    }
    Ok(())
}

/// Tensor (concatenation) product of two coordinate rows.
pub fn tensor(f: Field, a: &[(Word, Scalar)], b: &[(Word, Scalar)]) -> Row<Word> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (u, x) in a {
        for (v, y) in b {
            out.push((u.concat(v), f.mul(x, y)));
        }
    }
    out
}

/// Intersection of two finite spaces by the Zassenhaus sum-intersection method.
fn zassenhaus(a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    let f = a.field;
    let mut e: Echelon<(u8, Word)> = Echelon::new(f);
    for r in a.finite_rows().unwrap() {
        let mut v: Row<(u8, Word)> = r.iter().map(|(w, c)| ((0, w.clone()), c.clone())).collect();
        v.extend(r.iter().map(|(w, c)| ((1, w.clone()), c.clone())));
        e.insert(v);
    }
    for r in b.finite_rows().unwrap() {
        e.insert(r.iter().map(|(w, c)| ((0, w.clone()), c.clone())).collect());
    }
    let rows = e
        .rows()
        .iter()
        .filter(|r| r[0].0 .0 == 1)
        .map(|r| r.iter().map(|((_, w), c)| (w.clone(), c.clone())).collect::<Row<Word>>());
    GradedSubspace::from_rows(f, a.degree, rows)
}

/// Greedy complement of a finite `a` inside a finite `within`: candidates are the
/// basis rows of `within` in pivot order.
fn greedy_complement(a: &GradedSubspace, within: &GradedSubspace) -> GradedSubspace {
    let f = a.field;
    let mut e = Echelon::from_rows(f, a.finite_rows().unwrap());
    let target = within.finite_rows().unwrap().len();
    let mut chosen = Vec::new();
    for r in within.finite_rows().unwrap() {
        if e.rank() == target {
            break;
        }
        if e.insert(r.clone()) {
            chosen.push(r);
        }
    }
    GradedSubspace::from_rows(f, a.degree, chosen)
}

/// Coordinates of `row` as a map, for callers assembling vectors by hand.
pub fn row_map(row: &[(Word, Scalar)]) -> BTreeMap<Word, Scalar> {
    row.iter().cloned().collect()
}

#[cfg(test)]
mod tests;
