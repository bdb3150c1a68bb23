//! Images of words placed inside all possible contexts.
//!
//! For words `u_1, …, u_s` of equal length placed at a fixed offset of a block of degree
//! `2^l`, the set `{(π_l(a·u_i·b))_i : a, b words}` spans a subspace of `V(2^l)^s`. It is
//! computed recursively over the halves of the block and returned as a list of tuples,
//! each achieved by an explicit context `(a, b)`. A subspace spanned by `Σ c_i u_i` lies in
//! every `H·U·H`-type kernel in question iff every returned tuple satisfies
//! `Σ c_i vals_i = 0`.

use crate::construction::tower::{Coords, LevelMap, Tower};
use crate::field::{Field, Scalar};
use crate::subspace::Echelon;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextGen {
    /// One image per input word.
    pub vals: Vec<Coords>,
    pub left: Word,
    pub right: Word,
}

/// Contexts of `parts` at `offset` in a block of level `level`, mapped by `π_level`.
pub fn context_image(tower: &Tower, level: usize, parts: &[&[u8]], offset: usize) -> Vec<ContextGen> {
    image(tower, level, parts, offset, false)
}

/// Contexts in a block of level `half + 1`, mapped by `π_half ⊗ π_half` onto the
/// concatenation coordinates `i·d + j` with `d = dim V(2^half)`.
pub fn pair_context_image(tower: &Tower, half: usize, parts: &[&[u8]], offset: usize) -> Vec<ContextGen> {
    image(tower, half + 1, parts, offset, true)
}

/// `(π_half ⊗ π_half)` of a linear combination, evaluated word by word.
pub fn pair_project(tower: &Tower, half: usize, row: &[(Word, Scalar)]) -> Coords {
    let f = tower.field();
    let d = tower.level(half).dim_v() as u32;
    let mut acc = std::collections::BTreeMap::<u32, Scalar>::new();
    for (k, c) in tower.project_blocks_row(&[half, half], row) {
        let e = acc.entry(k[0] * d + k[1]).or_insert_with(|| f.zero());
        *e = f.add(e, &c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn combine(tower: &Tower, l: usize, pair_top: bool, a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Coords {
    if !pair_top {
        return tower.combine(l, a, b);
    }
    let f = tower.field();
    let d = tower.level(l - 1).dim_v() as u32;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * d + j, f.mul(x, y)));
        }
    }
    out
}

fn eval_full(tower: &Tower, l: usize, pair_top: bool, w: &[u8]) -> Coords {
    if !pair_top {
        return tower.project(l, w);
    }
    let h = w.len() / 2;
    let a = tower.project(l - 1, &w[..h]);
    let b = tower.project(l - 1, &w[h..]);
    combine(tower, l, true, &a, &b)
}

fn image(tower: &Tower, l: usize, parts: &[&[u8]], offset: usize, pair_top: bool) -> Vec<ContextGen> {
    if parts.is_empty() {
        return Vec::new();
    }
    let f = tower.field();
    let len = parts[0].len();
    let size = 1usize << l;
    debug_assert!(offset + len <= size);
    let mut gens = Vec::new();
    if len == size {
        gens.push(ContextGen {
            vals: parts.iter().map(|u| eval_full(tower, l, pair_top, u)).collect(),
            left: Word::empty(),
            right: Word::empty(),
        });
        return independent(f, gens);
    }
    let h = size / 2;
    let lower = tower.level(l - 1);
    let units: Vec<(Word, Coords)> =
        lower.v_words().iter().enumerate().map(|(b, w)| (w.clone(), vec![(b as u32, f.one())])).collect();
    if offset + len <= h {
        for g in image(tower, l - 1, parts, offset, false) {
            for (vw, e) in &units {
                gens.push(ContextGen {
                    vals: g.vals.iter().map(|a| combine(tower, l, pair_top, a, e)).collect(),
                    left: g.left.clone(),
                    right: g.right.concat(vw),
                });
            }
        }
    } else if offset >= h {
        for g in image(tower, l - 1, parts, offset - h, false) {
            for (vw, e) in &units {
                gens.push(ContextGen {
                    vals: g.vals.iter().map(|b| combine(tower, l, pair_top, e, b)).collect(),
                    left: vw.concat(&g.left),
                    right: g.right.clone(),
                });
            }
        }
    } else {
        let cut = h - offset;
        let lefts: Vec<&[u8]> = parts.iter().map(|u| &u[..cut]).collect();
        let rights: Vec<&[u8]> = parts.iter().map(|u| &u[cut..]).collect();
        let li = image(tower, l - 1, &lefts, offset, false);
        let ri = image(tower, l - 1, &rights, 0, false);
        for gl in &li {
            for gr in &ri {
                gens.push(ContextGen {
                    vals: gl.vals.iter().zip(&gr.vals).map(|(a, b)| combine(tower, l, pair_top, a, b)).collect(),
                    left: gl.left.clone(),
                    right: gr.right.clone(),
                });
            }
        }
    }
    if !pair_top && !matches!(tower.level(l).map(), LevelMap::Letters) {
        // Perturbed words at this level contribute their values directly.
        for w in tower.level(l).overrides().keys() {
            let seg = &w.letters()[offset..offset + len];
            if parts.contains(&seg) {
                let left = w.slice(0, offset);
                let right = w.slice(offset + len, size);
                let vals = parts
                    .iter()
                    .map(|u| {
                        let full = left.concat(&Word::from_slice(u)).concat(&right);
                        tower.project(l, full.letters())
                    })
                    .collect();
                gens.push(ContextGen { vals, left, right });
            }
        }
    }
    independent(f, gens)
}

/// Keeps a maximal linearly independent subfamily, in order.
fn independent(f: Field, gens: Vec<ContextGen>) -> Vec<ContextGen> {
    let mut e: Echelon<(u32, u32)> = Echelon::new(f);
    let mut out = Vec::new();
    for g in gens {
        let v: Vec<((u32, u32), Scalar)> = g
            .vals
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |(k, x)| ((i as u32, *k), x.clone())))
            .collect();
        if e.insert(v) {
            out.push(g);
        }
    }
    out
}

/// `Σ c_i vals_i` for one generator.
pub fn combine_values(f: Field, g: &ContextGen, coeffs: &[Scalar]) -> Coords {
    let mut acc = std::collections::BTreeMap::<u32, Scalar>::new();
    for (vals, c) in g.vals.iter().zip(coeffs) {
        for (k, x) in vals {
            let e = acc.entry(*k).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(x, c));
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
