//! The tower of projections `π_n : H(2^n) → V(2^n)` whose kernels are the spaces `U(2^n)`.
//!
//! `π_0` sends x, y to the two basis coordinates and z to zero. Each higher level
//! combines the projections of the two halves of a word: by the tensor product when
//! `V(2^{n+1}) = V(2^n)V(2^n)`, or by the tensor product followed by a projection of
//! `V(2^n)⊗V(2^n)` onto the two chosen monomials along the complement otherwise. Then
//! `ker π_{n+1} = U⊗H + H⊗U + (complement)`, which is the inductive definition of
//! `U(2^{n+1})`.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::subspace::{nullspace, GradedSubspace, Row};
use crate::word::Word;

/// Coordinates in the monomial basis of some `V(2^n)`, sorted by index.
pub type Coords = Vec<(u32, Scalar)>;

/// Largest support set materialized for a level.
pub const SUPPORT_CAP: usize = 1 << 17;

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        self.letters()
    }
}

#[derive(Clone, Debug)]
pub enum LevelMap {
    Letters,
    /// `π(uv) = π(u) ⊗ π(v)`.
    Square,
    /// `π(uv) = post(π(u) ⊗ π(v))`; `post[c]` is the image of the `c`-th concatenation.
    Select(Vec<Coords>),
}

#[derive(Debug)]
pub struct Level {
    pub n: usize,
    v: GradedSubspace,
    v_words: Vec<Word>,
    v_index: HashMap<Word, u32>,
    map: LevelMap,
    overrides: BTreeMap<Word, Coords>,
    pure: bool,
    memo: RwLock<HashMap<Word, Coords>>,
    support: OnceLock<std::result::Result<Arc<Vec<Word>>, Error>>,
    kernel: OnceLock<std::result::Result<Arc<GradedSubspace>, Error>>,
}

impl Clone for Level {
    fn clone(&self) -> Self {
        Level {
            n: self.n,
            v: self.v.clone(),
            v_words: self.v_words.clone(),
            v_index: self.v_index.clone(),
            map: self.map.clone(),
            overrides: self.overrides.clone(),
            pure: self.pure,
            memo: RwLock::new(HashMap::new()),
            support: OnceLock::new(),
            kernel: OnceLock::new(),
        }
    }
}

impl Level {
    pub fn v(&self) -> &GradedSubspace {
        &self.v
    }

    pub fn v_words(&self) -> &[Word] {
        &self.v_words
    }

    pub fn dim_v(&self) -> usize {
        self.v_words.len()
    }

    pub fn map(&self) -> &LevelMap {
        &self.map
    }

    pub fn overrides(&self) -> &BTreeMap<Word, Coords> {
        &self.overrides
    }

    /// True when `π` is the indicator of the `V` words (no corrections anywhere below).
    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn index_of(&self, w: &[u8]) -> Option<u32> {
        self.v_index.get(w).copied()
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    field: Field,
    levels: Vec<Level>,
}

fn map_is_monomial(map: &LevelMap) -> bool {
    match map {
        LevelMap::Letters | LevelMap::Square => true,
        LevelMap::Select(post) => {
            // An indicator map: each target hit by exactly one concatenation, with coefficient 1.
            let mut seen = std::collections::BTreeSet::new();
            post.iter().all(|c| c.is_empty() || (c.len() == 1 && c[0].1.is_one() && seen.insert(c[0].0)))
        }
    }
}

impl Tower {
    /// Level 0: `V(1) = Kx + Ky`, `U(1) = Kz`.
    pub fn new(field: Field) -> Tower {
        let mut t = Tower { field, levels: Vec::new() };
        let v_words: Vec<Word> = vec!["x".parse().unwrap(), "y".parse().unwrap()];
        t.push_level(v_words, LevelMap::Letters);
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn push_level(&mut self, mut v_words: Vec<Word>, map: LevelMap) {
        v_words.sort();
        let n = self.levels.len();
        let degree = 1usize << n;
        let v = GradedSubspace::monomials(self.field, degree, v_words.iter().cloned())
            .expect("V words have the level degree");
        let v_index = v_words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let pure = map_is_monomial(&map) && self.levels.last().is_none_or(|l| l.pure);
        self.levels.push(Level {
            n,
            v,
            v_words,
            v_index,
            map,
            overrides: BTreeMap::new(),
            pure,
            memo: RwLock::new(HashMap::new()),
            support: OnceLock::new(),
            kernel: OnceLock::new(),
        });
    }

    /// Adds `delta` to `π_n(w)`. Used to perturb a tower when exercising verifiers.
    pub fn add_override(&mut self, n: usize, w: Word, delta: Coords) {
        assert_eq!(w.degree(), 1 << n, "override word has the wrong degree");
        self.levels[n].overrides.insert(w, delta);
        for l in n..self.levels.len() {
            let lvl = &mut self.levels[l];
            lvl.pure = false;
            lvl.memo = RwLock::new(HashMap::new());
            lvl.support = OnceLock::new();
            lvl.kernel = OnceLock::new();
        }
    }

    /// Whether levels `0..=n` are all pure.
    pub fn is_pure(&self, n: usize) -> bool {
        self.levels[n].pure
    }

    /// `π_n(w)` for a word of degree `2^n`.
    pub fn project(&self, n: usize, w: &[u8]) -> Coords {
        let lvl = &self.levels[n];
        debug_assert_eq!(w.len(), 1 << n);
        if lvl.pure {
            return match lvl.v_index.get(w) {
                Some(&i) => vec![(i, self.field.one())],
                None => Vec::new(),
            };
        }
        if n >= 2 {
            if let Some(c) = lvl.memo.read().unwrap().get(w) {
                return c.clone();
            }
        }
        let mut out = self.project_structural(n, w);
        if let Some(delta) = lvl.overrides.get(w) {
            out = add_coords(self.field, &out, delta);
        }
        if n >= 2 {
            lvl.memo.write().unwrap().insert(Word::from_slice(w), out.clone());
        }
        out
    }

    /// `π_n(w)` without the override at level `n` itself.
    pub fn project_structural(&self, n: usize, w: &[u8]) -> Coords {
        let f = self.field;
        let lvl = &self.levels[n];
        match &lvl.map {
            LevelMap::Letters => match w[0] {
                0 => vec![(0, f.one())],
                1 => vec![(1, f.one())],
                _ => Vec::new(),
            },
            _ => {
                let h = w.len() / 2;
                let a = self.project(n - 1, &w[..h]);
                if a.is_empty() {
                    return a;
                }
                let b = self.project(n - 1, &w[h..]);
                self.combine(n, &a, &b)
            }
        }
    }

    /// Image at level `n` of `a ⊗ b`, where `a, b` are level `n-1` coordinates.
    pub fn combine(&self, n: usize, a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Coords {
        let f = self.field;
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let d = self.levels[n - 1].dim_v() as u32;
        match &self.levels[n].map {
            LevelMap::Letters => unreachable!("level 0 has no halves"),
            LevelMap::Square => {
                let mut out = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (j, y) in b {
                        out.push((i * d + j, f.mul(x, y)));
                    }
                }
                out
            }
            LevelMap::Select(post) => {
                let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                for (i, x) in a {
                    for (j, y) in b {
                        let img = &post[(i * d + j) as usize];
                        if img.is_empty() {
                            continue;
                        }
                        let xy = f.mul(x, y);
                        for (k, c) in img {
                            let e = acc.entry(*k).or_insert_with(|| f.zero());
                            *e = f.add(e, &f.mul(&xy, c));
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        }
    }

    /// `π_n` applied to a linear combination of words.
    pub fn project_row(&self, n: usize, row: &[(Word, Scalar)]) -> Coords {
        let mut acc: Coords = Vec::new();
        for (w, c) in row {
            let img = self.project(n, w.letters());
            if !img.is_empty() {
                acc = add_coords(self.field, &acc, &scale_coords(self.field, &img, c));
            }
        }
        acc
    }

    /// The words with nonzero image under `π_n`.
    pub fn support(&self, n: usize) -> Result<Arc<Vec<Word>>> {
        let lvl = &self.levels[n];
        lvl.support
            .get_or_init(|| {
                if lvl.pure {
                    return Ok(Arc::new(lvl.v_words.clone()));
                }
                let mut cand: Vec<Word> = if n == 0 {
                    ["x", "y", "z"].iter().map(|s| s.parse().unwrap()).collect()
                } else {
                    let prev = self.support(n - 1)?;
                    if prev.len().saturating_mul(prev.len()) > SUPPORT_CAP {
                        return Err(Error::TooLarge(format!("support of level {n}")));
                    }
                    prev.iter().flat_map(|u| prev.iter().map(move |v| u.concat(v))).collect()
                };
                cand.extend(lvl.overrides.keys().cloned());
                cand.sort();
                cand.dedup();
                Ok(Arc::new(cand.into_iter().filter(|w| !self.project(n, w.letters()).is_empty()).collect()))
            })
            .clone()
    }

    /// `U(2^n) = ker π_n` in co-monomial form.
    pub fn kernel(&self, n: usize) -> Result<Arc<GradedSubspace>> {
        let lvl = &self.levels[n];
        lvl.kernel
            .get_or_init(|| {
                let support = self.support(n)?;
                let columns: Vec<(Word, Row<u32>)> =
                    support.iter().map(|w| (w.clone(), self.project(n, w.letters()))).collect();
                let rows = nullspace(self.field, &columns);
                let excluded = support.iter().cloned().collect();
                Ok(Arc::new(GradedSubspace::comonomial(self.field, 1 << n, excluded, rows)?))
            })
            .clone()
    }

    /// `(π_{l_1} ⊗ … ⊗ π_{l_k})(w)` for consecutive blocks of the given levels.
    pub fn project_blocks(&self, levels: &[usize], w: &[u8]) -> Vec<(Vec<u32>, Scalar)> {
        let f = self.field;
        let mut acc: Vec<(Vec<u32>, Scalar)> = vec![(Vec::new(), f.one())];
        let mut at = 0;
        for &l in levels {
            let len = 1usize << l;
            let img = self.project(l, &w[at..at + len]);
            at += len;
            if img.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(acc.len() * img.len());
            for (key, c) in &acc {
                for (i, x) in &img {
                    let mut k = key.clone();
                    k.push(*i);
                    next.push((k, f.mul(c, x)));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn project_blocks_row(&self, levels: &[usize], row: &[(Word, Scalar)]) -> BTreeMap<Vec<u32>, Scalar> {
        let f = self.field;
        let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (w, c) in row {
            for (k, x) in self.project_blocks(levels, w.letters()) {
                let e = acc.entry(k).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(c, &x));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }
}

pub fn add_coords(f: Field, a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Coords {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = f.add(&a[i].1, &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_coords(f: Field, a: &[(u32, Scalar)], c: &Scalar) -> Coords {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, x)| (*k, f.mul(x, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pick_tower() -> Tower {
        let mut t = Tower::new(Field::GF2);
        // V(2) = {xx, xy}; concatenation indices: xx=0, xy=1, yx=2, yy=3.
        let post = vec![vec![(0, Field::GF2.one())], vec![(1, Field::GF2.one())], vec![], vec![]];
        t.push_level(vec![w("xx"), w("xy")], LevelMap::Select(post));
        t
    }

    #[test]
    fn letters_and_pick() {
        let t = pick_tower();
        assert_eq!(t.project(0, w("z").letters()), vec![]);
        assert_eq!(t.project(1, w("xy").letters()), vec![(1, Field::GF2.one())]);
        assert!(t.project(1, w("yx").letters()).is_empty());
        assert!(t.is_pure(1));
        let k = t.kernel(1).unwrap();
        assert_eq!(k.dim_usize(), Some(7));
        assert_eq!(k.excluded().unwrap().len(), 2);
    }

    #[test]
    fn overrides_break_purity() {
        let mut t = pick_tower();
        t.add_override(1, w("yx"), vec![(0, Field::GF2.one())]);
        assert!(!t.is_pure(1));
        assert_eq!(t.project(1, w("yx").letters()), vec![(0, Field::GF2.one())]);
        let k = t.kernel(1).unwrap();
        assert_eq!(k.dim_usize(), Some(7));
        assert!(k.contains(&crate::Poly::parse("xx + yx", Field::GF2).unwrap()).unwrap());
    }

    #[test]
    fn coords_arithmetic() {
        let f = Field::prime(3).unwrap();
        let a = vec![(0, f.from_i64(1)), (2, f.from_i64(2))];
        let b = vec![(1, f.from_i64(1)), (2, f.from_i64(1))];
        assert_eq!(add_coords(f, &a, &b), vec![(0, f.one()), (1, f.one())]);
    }
}
