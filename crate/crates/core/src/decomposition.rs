//! The spaces `W(j), S(j), R(j), Q(j)` built from the binary expansion of `j`.
//!
//! With bits `p_0 < … < p_n` of `j`, `W(j)` and `Q(j)` are the ordered products of the
//! `V(2^{p_k})` (ascending and descending), and `S(j)`, `R(j)` are the sums of the
//! matching `H·U(2^{p_k})·H` summands.
//!
//! When every level involved is monomial, each summand `H(a)·U(2^p)·H(b)` is the span of the
//! words whose block at offset `a` is not a `V(2^p)` monomial. A sum of such summands is then
//! the span of all words outside a finite set `X`: the words whose blocks are `V` monomials
//! at every constrained offset. Containment `A ⊆ B` between such spaces is `X_B ⊆ X_A`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::construction::{BlockKernel, ConstructionState, Tower};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::report::{Check, Report};
use crate::subspace::dense::{DenseSpace, MAX_DENSE_DEGREE};
use crate::subspace::{GradedSubspace, ENUMERATION_CAP};
use crate::word::{all_words, pow3, Word};

/// Largest degree cross-checked with the dense engine.
pub const DENSE_CHECK_DEGREE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDecomposition {
    pub j: usize,
    /// Exponents `p_0 < p_1 < …`.
    pub bits: Vec<usize>,
}

impl BinaryDecomposition {
    pub fn new(j: usize) -> BinaryDecomposition {
        BinaryDecomposition { j, bits: (0..usize::BITS as usize).filter(|b| j >> b & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `t_k = Σ_{i<k} 2^{p_i}`.
    pub fn prefix(&self, k: usize) -> usize {
        self.bits[..k].iter().map(|&p| 1usize << p).sum()
    }

    /// `m_k = Σ_{i>k} 2^{p_i}`.
    pub fn suffix(&self, k: usize) -> usize {
        self.bits[k + 1..].iter().map(|&p| 1usize << p).sum()
    }

    pub fn ascending(&self) -> Vec<usize> {
        self.bits.clone()
    }

    pub fn descending(&self) -> Vec<usize> {
        self.bits.iter().rev().copied().collect()
    }
}

/// `H(offset)·U(2^level)·H(rest)` inside a space of fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub offset: usize,
    pub level: usize,
}

/// A sum of summands of one degree, all over monomial levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSum {
    pub degree: usize,
    pub summands: Vec<Summand>,
}

impl SummandSum {
    fn blocks(degree: usize, levels: &[usize]) -> SummandSum {
        let mut at = 0;
        let summands = levels
            .iter()
            .map(|&l| {
                let s = Summand { offset: at, level: l };
                at += 1 << l;
                s
            })
            .collect();
        SummandSum { degree, summands }
    }

    /// `H(left)·self·H(right)`.
    pub fn pad(&self, left: usize, right: usize) -> SummandSum {
        SummandSum {
            degree: self.degree + left + right,
            summands: self.summands.iter().map(|s| Summand { offset: s.offset + left, level: s.level }).collect(),
        }
    }

    pub fn plus(&self, other: &SummandSum) -> SummandSum {
        assert_eq!(self.degree, other.degree);
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().copied());
        SummandSum { degree: self.degree, summands }
    }

    fn require_monomial(&self, tower: &Tower) -> Result<()> {
        for s in &self.summands {
            if s.level > tower.top() {
                return Err(Error::Range { degree: self.degree, needed: s.level, built: tower.top() });
            }
            if !tower.is_pure(s.level) {
                return Err(Error::NonMonomial(format!("level {} is not monomial", s.level)));
            }
        }
        Ok(())
    }

    /// Whether the word lies in the summand, i.e. its block there is not a `V` monomial.
    pub fn summand_contains(tower: &Tower, s: &Summand, w: &Word) -> bool {
        let len = 1usize << s.level;
        tower.level(s.level).index_of(&w.letters()[s.offset..s.offset + len]).is_none()
    }

    pub fn contains_word(&self, tower: &Tower, w: &Word) -> bool {
        self.summands.iter().any(|s| Self::summand_contains(tower, s, w))
    }

    /// The words outside the sum: `V` monomials at every constrained block.
    pub fn excluded(&self, tower: &Tower) -> Result<BTreeSet<Word>> {
        self.require_monomial(tower)?;
        let mut cons = self.summands.clone();
        cons.sort();
        let mut out = BTreeSet::new();
        let mut letters: Vec<Option<u8>> = vec![None; self.degree];
        fill(tower, &cons, 0, &mut letters, &mut out)?;
        Ok(out)
    }

    pub fn dim(&self, tower: &Tower) -> Result<BigUint> {
        Ok(pow3(self.degree) - BigUint::from(self.excluded(tower)?.len()))
    }

    pub fn to_subspace(&self, tower: &Tower) -> Result<GradedSubspace> {
        GradedSubspace::comonomial(tower.field(), self.degree, self.excluded(tower)?, Vec::new())
    }

    /// Dense span built summand by summand from the materialized `U` spaces.
    pub fn dense(&self, tower: &Tower) -> Result<DenseSpace> {
        let mut d = DenseSpace::new(self.degree)?;
        for s in &self.summands {
            let u = tower.kernel(s.level)?;
            let len = 1usize << s.level;
            let right = self.degree - s.offset - len;
            let ubasis = u.basis(1 << 20)?;
            let lefts: Vec<Word> = all_words(s.offset).collect();
            let rights: Vec<Word> = all_words(right).collect();
            for a in &lefts {
                for b in &rights {
                    for p in &ubasis {
                        let g = p.left_mul_word(a).right_mul_word(b);
                        d.insert(d.vector(&g)?);
                    }
                }
            }
        }
        Ok(d)
    }
}

fn fill(
    tower: &Tower,
    cons: &[Summand],
    k: usize,
    letters: &mut Vec<Option<u8>>,
    out: &mut BTreeSet<Word>,
) -> Result<()> {
    if k == cons.len() {
        let free: Vec<usize> = (0..letters.len()).filter(|&i| letters[i].is_none()).collect();
        let count = 3usize.checked_pow(free.len() as u32).unwrap_or(usize::MAX);
        if out.len().saturating_add(count) > ENUMERATION_CAP {
            return Err(Error::TooLarge("excluded set of a summand sum".into()));
        }
        for fill in all_words(free.len()) {
            let mut w: Vec<u8> = letters.iter().map(|l| l.unwrap_or(0)).collect();
            for (&i, &c) in free.iter().zip(fill.letters()) {
                w[i] = c;
            }
            out.insert(Word::from_letters(w));
        }
        return Ok(());
    }
    let s = cons[k];
    let len = 1usize << s.level;
    for v in tower.level(s.level).v_words() {
        let fits = v.letters().iter().enumerate().all(|(i, &c)| letters[s.offset + i].is_none_or(|x| x == c));
        if !fits {
            continue;
        }
        let saved: Vec<Option<u8>> = letters[s.offset..s.offset + len].to_vec();
        for (i, &c) in v.letters().iter().enumerate() {
            letters[s.offset + i] = Some(c);
        }
        fill(tower, cons, k + 1, letters, out)?;
        letters[s.offset..s.offset + len].copy_from_slice(&saved);
    }
    Ok(())
}

fn check_range(state: &ConstructionState, j: usize) -> Result<BinaryDecomposition> {
    if j == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    let d = BinaryDecomposition::new(j);
    let top = *d.bits.last().unwrap();
    if top > state.max_pow() {
        return Err(Error::Range { degree: j, needed: top, built: state.max_pow() });
    }
    Ok(d)
}

fn words_space(state: &ConstructionState, j: usize, levels: &[usize]) -> Result<GradedSubspace> {
    let words = BlockKernel::new(levels.to_vec()).complement_words(state.tower())?;
    GradedSubspace::monomials(state.field(), j, words)
}

/// `W(j) = V(2^{p_0})V(2^{p_1})⋯V(2^{p_n})`.
pub fn w_of(state: &ConstructionState, j: usize) -> Result<GradedSubspace> {
    let d = check_range(state, j)?;
    words_space(state, j, &d.ascending())
}

/// `Q(j) = V(2^{p_n})⋯V(2^{p_0})`.
pub fn q_of(state: &ConstructionState, j: usize) -> Result<GradedSubspace> {
    let d = check_range(state, j)?;
    words_space(state, j, &d.descending())
}

/// Summands `S(j,k) = H(t_k)·U(2^{p_k})·H(m_k)`.
pub fn s_summands(j: usize) -> SummandSum {
    SummandSum::blocks(j, &BinaryDecomposition::new(j).ascending())
}

/// Summands `R(j,k) = H(m_k)·U(2^{p_k})·H(t_k)`.
pub fn r_summands(j: usize) -> SummandSum {
    SummandSum::blocks(j, &BinaryDecomposition::new(j).descending())
}

/// `S(j)` with its summands. Monomial levels give an exact co-monomial space; otherwise the
/// space is the kernel of `π_{p_0} ⊗ … ⊗ π_{p_n}`.
pub fn s_of(state: &ConstructionState, j: usize) -> Result<(SummandSum, GradedSubspace)> {
    let d = check_range(state, j)?;
    let sum = s_summands(j);
    let space = match sum.to_subspace(state.tower()) {
        Err(Error::NonMonomial(_)) => BlockKernel::new(d.ascending()).materialize(state.tower())?,
        other => other?,
    };
    Ok((sum, space))
}

pub fn r_of(state: &ConstructionState, j: usize) -> Result<(SummandSum, GradedSubspace)> {
    let d = check_range(state, j)?;
    let sum = r_summands(j);
    let space = match sum.to_subspace(state.tower()) {
        Err(Error::NonMonomial(_)) => BlockKernel::new(d.descending()).materialize(state.tower())?,
        other => other?,
    };
    Ok((sum, space))
}

fn label(rep: &mut Report, state: &ConstructionState) {
    if state.schedule().is_scaled() {
        rep.label("non-paper constants");
    }
}

fn err_check(name: String, e: Error) -> Check {
    Check::fail(name, format!("not computable: {e}"))
}

/// `S(j) ⊕ W(j) = H(j)` and `R(j) ⊕ Q(j) = H(j)`.
pub fn verify_direct_sum(state: &ConstructionState, j: usize) -> Report {
    check_direct_sum(state, j, &[])
}

/// As [`verify_direct_sum`], with `extra` words added to `W(j)` and `Q(j)`.
pub fn check_direct_sum(state: &ConstructionState, j: usize, extra: &[Word]) -> Report {
    let mut rep = Report::new("lemma5");
    label(&mut rep, state);
    let d = match check_range(state, j) {
        Ok(d) => d,
        Err(e) => {
            rep.push(err_check(format!("direct sum j={j}"), e));
            return rep;
        }
    };
    let tower = state.tower();
    for (tag, sum, levels) in [("S+W", s_summands(j), d.ascending()), ("R+Q", r_summands(j), d.descending())] {
        let name = format!("{tag} j={j}");
        let run = || -> Result<Check> {
            let mut words: BTreeSet<Word> =
                BlockKernel::new(levels.clone()).complement_words(tower)?.into_iter().collect();
            words.extend(extra.iter().cloned());
            let x = sum.excluded(tower)?;
            let total = pow3(j);
            let dim_s = &total - BigUint::from(x.len());
            let dim_sum = &dim_s + BigUint::from(words.len());
            if let Some(w) = words.iter().find(|w| !x.contains(*w)) {
                return Ok(Check::fail(name.clone(), "the product word space meets the summand space").with("word", w));
            }
            if let Some(w) = x.iter().find(|w| !words.contains(*w)) {
                return Ok(Check::fail(name.clone(), "a word lies outside both spaces").with("word", w));
            }
            let mut c = Check::new(
                name.clone(),
                dim_sum == total,
                format!("dim = {dim_s} + {} = {total}, intersection 0", words.len()),
            );
            if j <= DENSE_CHECK_DEGREE && state.field() == Field::GF2 && j <= MAX_DENSE_DEGREE {
                let ds = sum.dense(tower)?;
                let mut both = ds.clone();
                for w in &words {
                    both.insert(both.word_vector(w));
                }
                let dense_ok = BigUint::from(ds.rank()) == dim_s && both.rank() == ds.ncols();
                if !dense_ok {
                    c = Check::fail(name.clone(), format!("dense rank {} disagrees with {dim_s}", ds.rank()));
                } else {
                    c.detail.push_str(", dense rank agrees");
                }
            }
            Ok(c)
        };
        rep.push(run().unwrap_or_else(|e| err_check(name.clone(), e)));
    }
    rep
}

fn compare(tower: &Tower, name: String, lhs: &SummandSum, rhs: &SummandSum) -> Result<Check> {
    let (xl, xr) = (lhs.excluded(tower)?, rhs.excluded(tower)?);
    if let Some(w) = xl.symmetric_difference(&xr).next() {
        let side = if xl.contains(w) { "right" } else { "left" };
        return Ok(Check::fail(name, format!("the {side} side contains a word the other side lacks")).with("word", w));
    }
    let mut c = Check::pass(name, format!("both sides exclude the same {} words", xl.len()));
    if lhs.degree <= DENSE_CHECK_DEGREE && tower.field() == Field::GF2 {
        let (dl, dr) = (lhs.dense(tower)?, rhs.dense(tower)?);
        if dl.rank() != dr.rank() || !dr.rows().iter().all(|v| dl.contains(v)) {
            return Ok(Check::fail(c.name, format!("dense ranks {} and {} disagree", dl.rank(), dr.rank())));
        }
        c.detail.push_str(", dense spans agree");
    }
    Ok(c)
}

/// `R(j) = R(m)·H(m') + H(m)·R(m')` with `m = Σ_{i≥t} 2^{p_i}` and `m' = Σ_{i<t} 2^{p_i}`.
pub fn verify_recursion(state: &ConstructionState, j: usize, t: usize) -> Report {
    let mut rep = Report::new("lemma6");
    label(&mut rep, state);
    let name = format!("R({j}) split t={t}");
    let d = match check_range(state, j) {
        Ok(d) => d,
        Err(e) => {
            rep.push(err_check(name, e));
            return rep;
        }
    };
    if t == 0 || t >= d.len() {
        rep.push(Check::pass(name, "no valid split; vacuous"));
        return rep;
    }
    let m_low = d.prefix(t);
    let m_high = j - m_low;
    let lhs = r_summands(j);
    let rhs = r_summands(m_high).pad(0, m_low).plus(&r_summands(m_low).pad(m_high, 0));
    let name = format!("R({j}) = R({m_high})H({m_low}) + H({m_high})R({m_low})");
    rep.push(compare(state.tower(), name.clone(), &lhs, &rhs).unwrap_or_else(|e| err_check(name, e)));
    rep
}

/// `R(j)·H(t) ⊆ R(j+t)` and `H(t)·S(j) ⊆ S(j+t)`, checked summand by summand.
pub fn verify_absorption(state: &ConstructionState, j: usize, t: usize) -> Report {
    let mut rep = Report::new("thm7");
    label(&mut rep, state);
    if let Err(e) = check_range(state, j + t) {
        rep.push(err_check(format!("absorption j={j} t={t}"), e));
        return rep;
    }
    let tower = state.tower();
    let cases = [
        (format!("R({j})H({t}) ⊆ R({})", j + t), r_summands(j).pad(0, t), r_summands(j + t)),
        (format!("H({t})S({j}) ⊆ S({})", j + t), s_summands(j).pad(t, 0), s_summands(j + t)),
    ];
    for (name, small, big) in cases {
        let run = || -> Result<Check> {
            let xb = big.excluded(tower)?;
            for s in &small.summands {
                if let Some(w) = xb.iter().find(|w| SummandSum::summand_contains(tower, s, w)) {
                    return Ok(Check::fail(name.clone(), format!("summand at offset {} escapes", s.offset))
                        .with("word", w)
                        .with("offset", s.offset)
                        .with("level", s.level));
                }
            }
            Ok(Check::pass(name.clone(), format!("{} summands absorbed", small.summands.len())))
        };
        rep.push(run().unwrap_or_else(|e| err_check(name.clone(), e)));
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub j: usize,
    pub dim_w: String,
    pub dim_s: String,
    pub dim_r: String,
    pub dim_q: String,
    pub total: String,
    pub q_bound_ok: bool,
}

/// `dim Q(n) ≤ 3^17 n^9`.
pub fn q_bound(n: usize) -> BigUint {
    pow3(17) * BigUint::from(n).pow(9)
}

pub fn dims_row(state: &ConstructionState, j: usize) -> Result<DimsRow> {
    let d = check_range(state, j)?;
    let tower = state.tower();
    let (sk, rk) = (BlockKernel::new(d.ascending()), BlockKernel::new(d.descending()));
    let dim_q = rk.codim(tower);
    Ok(DimsRow {
        j,
        dim_w: sk.codim(tower).to_string(),
        dim_s: sk.dim(tower).to_string(),
        dim_r: rk.dim(tower).to_string(),
        q_bound_ok: dim_q <= q_bound(j),
        dim_q: dim_q.to_string(),
        total: pow3(j).to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, Schedule};

    fn state() -> ConstructionState {
        build(&Schedule::default(), 4).unwrap()
    }

    fn names(s: &GradedSubspace) -> Vec<String> {
        s.words().unwrap().iter().map(Word::to_string).collect()
    }

    #[test]
    fn bits_and_sums() {
        let d = BinaryDecomposition::new(11);
        assert_eq!(d.bits, [0, 1, 3]);
        for k in 0..d.len() {
            assert_eq!(d.prefix(k) + (1 << d.bits[k]) + d.suffix(k), 11);
        }
    }

    #[test]
    fn small_products() {
        let s = state();
        assert_eq!(names(&w_of(&s, 3).unwrap()), ["xxx", "xxy", "yxx", "yxy"]);
        assert_eq!(names(&q_of(&s, 3).unwrap()), ["xxx", "xxy", "xyx", "xyy"]);
        assert_eq!(w_of(&s, 4).unwrap(), *s.v(2));
        assert_eq!(q_of(&s, 4).unwrap(), *s.v(2));
        let (_, r3) = r_of(&s, 3).unwrap();
        assert_eq!(r3.dim(), BigUint::from(23u32));
        let (sum, s1) = s_of(&s, 1).unwrap();
        assert_eq!(sum.summands.len(), 1);
        assert_eq!(s1, **s.u(0).as_ref().unwrap());
        assert_eq!(s_summands(3).summands, [Summand { offset: 0, level: 0 }, Summand { offset: 1, level: 1 }]);
    }

    #[test]
    fn lemmas_small() {
        let s = state();
        for j in 1..=8 {
            assert!(verify_direct_sum(&s, j).passed(), "{}", verify_direct_sum(&s, j).render_text());
        }
        assert!(verify_recursion(&s, 3, 1).passed());
        assert!(verify_recursion(&s, 7, 2).passed());
        assert!(verify_absorption(&s, 3, 1).passed());
        assert!(verify_absorption(&s, 2, 1).passed());
    }

    #[test]
    fn fault_in_w() {
        let s = state();
        let r = check_direct_sum(&s, 3, &["zxx".parse().unwrap()]);
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().witness["word"], "zxx");
    }
}
