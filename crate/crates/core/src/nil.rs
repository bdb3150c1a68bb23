//! Enumeration of the augmentation ideal, the index map θ, truncated right ideals, and
//! the containment of `B_r(F) ∩ H(2^{m+2})` in the window space.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::construction::{pair_context_image, pair_project, ConstructionState};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;
use crate::report::{Check, Report};
use crate::subspace::GradedSubspace;
use crate::word::{all_words, Word};

/// Smallest index allowed in Z.
pub const MIN_INDEX: u32 = 5;

/// Whether `2^{2^i} > 3^{6t}`, decided exactly.
///
/// `3^{6t}` is odd, so the inequality holds iff `2^i` is at least its bit length.
pub fn exceeds(i: u32, t: u64) -> bool {
    let bits = (BigUint::from(3u32).pow((6 * t) as u32)).bits();
    i >= 64 || (1u64 << i) >= bits
}

/// `w_i = 4·2^{2^i}`, kept symbolic when the decimal expansion is impractical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleExp {
    pub i: u32,
}

/// Largest `i` for which `w_i` is expanded in decimal.
pub const DECIMAL_LIMIT: u32 = 16;

impl DoubleExp {
    pub fn value(&self) -> Option<BigUint> {
        (self.i <= DECIMAL_LIMIT).then(|| BigUint::from(4u32) << (1usize << self.i))
    }
}

impl fmt::Display for DoubleExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "4*2^(2^{})", self.i),
        }
    }
}

/// Stern's diatomic sequence.
fn fusc(mut n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while n > 0 {
        if n & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    b
}

/// The `k`-th nonzero coefficient: `1..p-1` over GF(p); signed Calkin–Wilf order over ℚ
/// (1, −1, 1/2, −1/2, 2, −2, …).
pub fn coefficient(field: Field, k: u64) -> Scalar {
    match field {
        Field::Prime { .. } => field.from_i64(k as i64 + 1),
        Field::Rational => {
            let n = k / 2 + 1;
            let q = BigRational::new(BigInt::from(fusc(n)), BigInt::from(fusc(n + 1)));
            let q = if k % 2 == 1 { -q } else { q };
            Scalar::Rat(Box::new(q))
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_tuple(t: &mut [u64], base: u64) -> bool {
    for i in (0..t.len()).rev() {
        if t[i] + 1 < base {
            t[i] += 1;
            return true;
        }
        t[i] = 0;
    }
    false
}

/// Polynomials with degree `d`, supported on `words` (all words of degree 1..=d, sorted),
/// coefficient indices below `base`, restricted by `accept`, in canonical order.
fn visit_stage<F>(
    field: Field,
    d: usize,
    words: &[Word],
    base: u64,
    accept: &dyn Fn(&[u64]) -> bool,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(Poly) -> ControlFlow<()>,
{
    let first_top = words.iter().position(|w| w.degree() == d).unwrap_or(words.len());
    for k in 1..=words.len() {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if c[k - 1] >= first_top {
                let mut coeffs = vec![0u64; k];
                loop {
                    if accept(&coeffs) {
                        let p = Poly::from_terms(
                            field,
                            c.iter().zip(&coeffs).map(|(&i, &x)| (words[i].clone(), coefficient(field, x))),
                        );
                        visit(p)?;
                    }
                    if !next_tuple(&mut coeffs, base) {
                        break;
                    }
                }
            }
            if !next_combination(&mut c, words.len()) {
                break;
            }
        }
    }
    ControlFlow::Continue(())
}

/// The first `count` nonzero polynomials without constant term, in canonical order.
///
/// Over GF(p) they are staged by degree, then term count, then support, then coefficient
/// index. Over ℚ stage `s` holds the polynomials whose degree and coefficient indices
/// reach height `s`, ordered the same way inside the stage.
pub fn canonical_listing(field: Field, count: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut visit = |p: Poly| {
        out.push(p);
        if out.len() == count {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    let mut stage = 1usize;
    loop {
        let flow = match field {
            Field::Prime { p } => {
                let words: Vec<Word> = (1..=stage).flat_map(all_words).collect();
                visit_stage(field, stage, &words, p - 1, &|_| true, &mut visit)
            }
            Field::Rational => {
                let s = stage as u64;
                let mut flow = ControlFlow::Continue(());
                for d in 1..=stage {
                    let words: Vec<Word> = (1..=d).flat_map(all_words).collect();
                    let top = d == stage;
                    let accept = move |c: &[u64]| top || c.iter().any(|&x| x + 1 == s);
                    flow = visit_stage(field, d, &words, s, &accept, &mut visit);
                    if flow.is_break() {
                        break;
                    }
                }
                flow
            }
        };
        if flow.is_break() {
            return out;
        }
        stage += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumEntry {
    /// Position `s` of the element in the canonical listing (1-based).
    pub s: usize,
    /// `i = θ(s)`.
    pub i: u32,
    pub f: Poly,
    pub t: u64,
    pub w: DoubleExp,
}

/// `θ(s) = min{ i ≥ 5 : i > θ(s−1), 2^{2^i} > 3^{6 t_s} }`.
pub fn theta(prev: Option<u32>, t: u64) -> u32 {
    let mut i = prev.map_or(MIN_INDEX, |p| (p + 1).max(MIN_INDEX));
    while !exceeds(i, t) {
        i += 1;
    }
    i
}

/// The first `count` pairs `(i, f_i)` with `i` in the image of θ.
pub fn enumerate(field: Field, count: usize) -> Vec<EnumEntry> {
    let mut prev = None;
    canonical_listing(field, count)
        .into_iter()
        .enumerate()
        .map(|(k, f)| {
            let t = f.degree().unwrap_or(0) as u64;
            let i = theta(prev, t);
            prev = Some(i);
            EnumEntry { s: k + 1, i, f, t, w: DoubleExp { i } }
        })
        .collect()
}

/// Checks on the first `count` entries: indices at least 5 and strictly increasing, the
/// exact inequality, `w_i = 4·2^{2^i}`, and that the entries list the canonical prefix.
pub fn verify_enumeration(field: Field, count: usize) -> Report {
    let mut rep = Report::new("enumerate");
    let entries = enumerate(field, count);
    let listing = canonical_listing(field, count);
    let first = entries.first().map(|e| e.i);
    let shown = first.map_or_else(|| "undefined".to_string(), |i| i.to_string());
    rep.push(Check::new("theta(1)", first == Some(5), format!("θ(1) = {shown}")));
    let bad_min = entries.iter().find(|e| e.i < MIN_INDEX);
    rep.push(match bad_min {
        None => Check::pass("index floor", format!("all {count} indices ≥ {MIN_INDEX}")),
        Some(e) => Check::fail("index floor", "index below the floor").with("s", e.s).with("i", e.i),
    });
    let bad_inc = entries.windows(2).find(|w| w[1].i <= w[0].i);
    rep.push(match bad_inc {
        None => Check::pass("strictly increasing", format!("{count} indices")),
        Some(w) => Check::fail("strictly increasing", "θ not increasing").with("s", w[1].s),
    });
    // Direct big-integer comparison where 2^{2^i} is materializable, bit lengths beyond.
    let holds = |i: u32, t: u64| {
        let rhs = BigUint::from(3u32).pow((6 * t) as u32);
        if i <= 12 {
            (BigUint::from(1u32) << (1usize << i)) > rhs
        } else {
            i >= 64 || rhs.bits() <= 1u64 << i
        }
    };
    let bad_ineq = entries.iter().find(|e| !holds(e.i, e.t));
    rep.push(match bad_ineq {
        None => Check::pass("2^(2^i) > 3^(6t)", format!("{count} entries, exact")),
        Some(e) => Check::fail("2^(2^i) > 3^(6t)", "inequality fails").with("i", e.i).with("t", e.t),
    });
    let bad_w = entries.iter().find(|e| e.w.value().is_some_and(|v| v != BigUint::from(2u32).pow((1u32 << e.i) + 2)));
    rep.push(match bad_w {
        None => Check::pass("w_i", "w_i = 4*2^(2^i) for every decimal entry"),
        Some(e) => Check::fail("w_i", "wrong value").with("i", e.i),
    });
    let listed = entries.iter().zip(&listing).all(|(e, g)| &e.f == g) && entries.len() == listing.len();
    rep.push(Check::new("prefix surjectivity", listed, format!("entries list the first {count} canonical elements")));
    rep
}

pub fn theta_image_contains(field: Field, i: u32) -> bool {
    if i < MIN_INDEX {
        return false;
    }
    // θ(s) ≥ s + 4, so only the first i − 4 elements can reach i.
    let mut last = None;
    for f in canonical_listing(field, (i - MIN_INDEX + 1) as usize) {
        let th = theta(last, f.degree().unwrap_or(0) as u64);
        if th >= i {
            return th == i;
        }
        last = Some(th);
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilDegreeRecord {
    pub i: u32,
    pub t: u64,
    pub w_i: String,
    /// `deg f_i^{10 w_i} = 10·w_i·t`.
    pub degree: String,
    pub degree_is_symbolic: bool,
    /// The window of index `i` starts at level `2^i − i − 1`, i.e. degree `2^{2^i−i−1}`.
    pub window_start_degree: String,
    pub verifiable: bool,
    pub note: String,
}

pub fn nil_degree_report(i: u32, t: u64) -> NilDegreeRecord {
    let w = DoubleExp { i };
    let (degree, symbolic) = match w.value() {
        Some(v) => ((v * BigUint::from(10u32) * BigUint::from(t)).to_string(), false),
        None => (format!("{}*2^(2^{i})", 40 * t), true),
    };
    let exp = (1u128 << i.min(100)) - i as u128 - 1;
    NilDegreeRecord {
        i,
        t,
        w_i: w.to_string(),
        degree,
        degree_is_symbolic: symbolic,
        window_start_degree: format!("2^{exp}"),
        verifiable: false,
        note: "symbolic report; degrees of this size are not desk-verifiable".into(),
    }
}

/// Graded pieces of `B_n(S) = Σ_k M(nk)·S·A` up to a degree cap.
#[derive(Clone, Debug)]
pub struct TruncatedRightIdeal {
    pub n: usize,
    pub s: GradedSubspace,
    pub components: BTreeMap<usize, GradedSubspace>,
}

impl TruncatedRightIdeal {
    pub fn component(&self, d: usize) -> Option<&GradedSubspace> {
        self.components.get(&d)
    }
}

fn pad(s: &GradedSubspace, left: usize, right: usize) -> Result<GradedSubspace> {
    let f = s.field();
    let mut out = s.clone();
    if left > 0 {
        out = GradedSubspace::full(f, left).product(&out)?;
    }
    if right > 0 {
        out = out.product(&GradedSubspace::full(f, right))?;
    }
    Ok(out)
}

/// Degree-`d` components of `B_n(S)` for `n ≤ d ≤ max_deg`.
pub fn b_ideal(n: usize, s: &GradedSubspace, max_deg: usize) -> Result<TruncatedRightIdeal> {
    if n == 0 || s.degree() != n {
        return Err(Error::Invalid(format!("generating space must lie in H({n})")));
    }
    let mut components = BTreeMap::new();
    for d in n..=max_deg {
        let mut acc = GradedSubspace::zero(s.field(), d);
        let mut k = 0;
        while n * k + n <= d {
            acc = acc.sum(&pad(s, n * k, d - n * k - n)?)?;
            k += 1;
        }
        components.insert(d, acc);
    }
    Ok(TruncatedRightIdeal { n, s: s.clone(), components })
}

/// `B_r(F_i) ∩ H(2^{m+2}) ⊆ U(2^{m+1})H(2^{m+1}) + H(2^{m+1})U(2^{m+1})` for
/// `m+1 = 2^i … max_half`, with `r = 2^{2^i}`.
///
/// For each basis vector `f` and each offset `k·r`, every context `a·f·b` with `a ∈ M(kr)`
/// is mapped by `π_{m+1} ⊗ π_{m+1}`; the containment holds iff all images vanish.
pub fn verify_bwifi(state: &ConstructionState, i: u32, max_half: usize) -> Report {
    let mut rep = Report::new("bwifi");
    if state.schedule().is_scaled() {
        rep.label("non-paper constants");
    }
    let level = 1usize << i;
    if level > state.max_pow() || max_half > state.max_pow() {
        rep.push(Check::fail(
            format!("bwifi i={i}"),
            format!("needs levels through {}, built {}", level.max(max_half), state.max_pow()),
        ));
        return rep;
    }
    let Some(fs) = state.f_space(i) else {
        rep.push(Check::pass(format!("bwifi i={i}"), "no F supplied; containment is vacuous"));
        return rep;
    };
    let field = state.field();
    let rows = fs.finite_rows().unwrap_or_default();
    let r = 1usize << level;
    let tower = state.tower();
    for half in level..=max_half {
        let name = format!("bwifi i={i} m+1={half}");
        let window = 1usize << (half + 1);
        let mut failure = None;
        let mut probes = 0usize;
        'outer: for row in &rows {
            let parts: Vec<&[u8]> = row.iter().map(|(w, _)| w.letters()).collect();
            let coeffs: Vec<Scalar> = row.iter().map(|(_, c)| c.clone()).collect();
            let mut off = 0;
            while off + r <= window {
                for g in pair_context_image(tower, half, &parts, off) {
                    probes += 1;
                    let img = crate::construction::context::combine_values(field, &g, &coeffs);
                    if !img.is_empty() {
                        failure = Some((row.clone(), off, g.left.clone(), g.right.clone()));
                        break 'outer;
                    }
                }
                off += r;
            }
        }
        match failure {
            None => rep.push(Check::pass(
                name,
                format!("{} basis vectors, {probes} independent contexts, all images vanish", rows.len()),
            )),
            Some((row, off, left, right)) => {
                let f = Poly::from_terms(field, row);
                let full = Poly::word(field, left.clone()).mul(&f).mul(&Poly::word(field, right.clone()));
                let direct: Vec<(Word, Scalar)> = full.terms().iter().map(|(a, b)| (a.clone(), b.clone())).collect();
                let img = pair_project(tower, half, &direct);
                rep.push(
                    Check::fail(name, format!("a·f·b escapes the window space at offset {off}"))
                        .with("f", &f)
                        .with("left", &left)
                        .with("right", &right)
                        .with("revalidated", !img.is_empty()),
                );
            }
        }
    }
    rep
}

/// The fault used to exercise [`verify_bwifi`]: `π_{2^i+1}` is perturbed on `u·v`, with `u`
/// a support word of the first F basis vector and `v` a V monomial, which breaks
/// condition 6 on `f·v`.
pub fn bwifi_fault(state: &ConstructionState, i: u32) -> Option<ConstructionState> {
    let level = 1usize << i;
    if level + 1 > state.max_pow() {
        return None;
    }
    let f = state.f_space(i)?.finite_rows()?.into_iter().next()?;
    let u = f.first()?.0.clone();
    let v = state.tower().level(level).v_words().first()?.clone();
    let delta = vec![(0u32, state.field().one())];
    Some(state.with_override(level + 1, u.concat(&v), delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn exact_inequality_matches_big_integers() {
        for i in 0..12u32 {
            for t in 0..40u64 {
                let lhs = BigUint::one() << (1usize << i);
                let rhs = BigUint::from(3u32).pow((6 * t) as u32);
                assert_eq!(exceeds(i, t), lhs > rhs, "i={i} t={t}");
            }
        }
    }

    #[test]
    fn listing_starts_with_letters() {
        let l = canonical_listing(Field::GF2, 8);
        let s: Vec<String> = l.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["x", "y", "z", "x + y", "x + z", "y + z", "x + y + z", "xx"]);
        let q = canonical_listing(Field::Rational, 9);
        assert_eq!(q[7].to_string(), "-x");
    }

    #[test]
    fn calkin_wilf() {
        let f = Field::Rational;
        let v: Vec<String> = (0..8).map(|k| f.format_scalar(&coefficient(f, k))).collect();
        assert_eq!(v, ["1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3"]);
    }

    #[test]
    fn theta_values() {
        let e = enumerate(Field::GF2, 3);
        assert_eq!(e[0].i, 5);
        assert_eq!(e[0].w.value().unwrap(), BigUint::one() << 34);
        assert!(theta_image_contains(Field::GF2, 7));
        assert!(!theta_image_contains(Field::GF2, 4));
    }

    #[test]
    fn nil_degree() {
        let r = nil_degree_report(5, 1);
        assert_eq!(r.degree, "171798691840");
        assert_eq!(nil_degree_report(5, 2).degree, "343597383680");
        assert!(!r.verifiable);
        assert!(nil_degree_report(20, 1).degree_is_symbolic);
    }
}
