//! Sparse row echelon forms over an ordered coordinate set.
//!
//! The pivot of a row is its smallest coordinate, and every stored row is scaled so
//! that its pivot coefficient is one.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::ops::Bound;

use crate::field::{Field, Scalar};

pub type Row<K> = Vec<(K, Scalar)>;

pub trait Key: Ord + Clone + Hash + std::fmt::Debug {}
impl<T: Ord + Clone + Hash + std::fmt::Debug> Key for T {}

#[derive(Clone, Debug)]
pub struct Echelon<K: Key> {
    field: Field,
    rows: Vec<Row<K>>,
    pivots: HashMap<K, usize>,
}

impl<K: Key> Echelon<K> {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new() }
    }

    /// Wraps rows that already have distinct, normalized pivots.
    pub fn from_echelon_rows(field: Field, rows: Vec<Row<K>>) -> Self {
        let pivots = rows.iter().enumerate().map(|(i, r)| (r[0].0.clone(), i)).collect();
        Echelon { field, rows, pivots }
    }

    pub fn from_rows<I: IntoIterator<Item = Row<K>>>(field: Field, rows: I) -> Self {
        let mut e = Echelon::new(field);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row<K>] {
        &self.rows
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.pivots.contains_key(k)
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.rows.iter().map(|r| &r[0].0)
    }

    /// Reduces `v` against the stored rows; the result has no entry at any pivot.
    pub fn reduce_map(&self, mut v: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        if self.rows.is_empty() {
            return v;
        }
        let f = self.field;
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let hit = v
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            let row = &self.rows[self.pivots[&k]];
            for (rk, rc) in row {
                let delta = f.mul(&c, rc);
                match v.get_mut(rk) {
                    Some(cur) => {
                        let s = f.sub(cur, &delta);
                        if s.is_zero() {
                            v.remove(rk);
                        } else {
                            *cur = s;
                        }
                    }
                    None => {
                        v.insert(rk.clone(), f.neg(&delta));
                    }
                }
            }
            cursor = Some(k);
        }
        v
    }

    pub fn reduce(&self, v: &[(K, Scalar)]) -> BTreeMap<K, Scalar> {
        let mut m = BTreeMap::new();
        let f = self.field;
        for (k, c) in v {
            if c.is_zero() {
                continue;
            }
            let e = m.entry(k.clone()).or_insert_with(|| f.zero());
            *e = f.add(e, c);
            if e.is_zero() {
                m.remove(k);
            }
        }
        self.reduce_map(m)
    }

    pub fn contains(&self, v: &[(K, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector; returns true when the rank grows.
    pub fn insert(&mut self, v: Row<K>) -> bool {
        let r = self.reduce(&v);
        self.insert_reduced(r)
    }

    pub fn insert_map(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let r = self.reduce_map(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: BTreeMap<K, Scalar>) -> bool {
        let Some((_, lead)) = r.iter().next() else { return false };
        let f = self.field;
        let inv = f.inv(lead);
        let row: Row<K> = r.into_iter().map(|(k, c)| (k, f.mul(&c, &inv))).collect();
        self.pivots.insert(row[0].0.clone(), self.rows.len());
        self.rows.push(row);
        true
    }

    /// Reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Vec<Row<K>> {
        let field = self.field;
        let mut order: Vec<Row<K>> = self.rows;
        order.sort_by(|a, b| b[0].0.cmp(&a[0].0));
        let mut done: Echelon<K> = Echelon::new(field);
        for row in order {
            let mut it = row.into_iter();
            let (pk, pc) = it.next().expect("nonempty row");
            let tail: BTreeMap<K, Scalar> = it.collect();
            let tail = done.reduce_map(tail);
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push((pk.clone(), pc));
            full.extend(tail);
            done.pivots.insert(pk, done.rows.len());
            done.rows.push(full);
        }
        let mut rows = done.rows;
        rows.reverse();
        rows
    }

    pub fn is_rref(rows: &[Row<K>]) -> bool {
        let pivots: HashMap<&K, usize> = rows.iter().enumerate().map(|(i, r)| (&r[0].0, i)).collect();
        if pivots.len() != rows.len() {
            return false;
        }
        rows.windows(2).all(|w| w[0][0].0 < w[1][0].0)
            && rows.iter().enumerate().all(|(i, r)| {
                r[0].1.is_one()
                    && r.windows(2).all(|w| w[0].0 < w[1].0)
                    && r.iter().skip(1).all(|(k, c)| !c.is_zero() && pivots.get(k).is_none_or(|&j| j == i))
            })
    }
}

/// Basis of the solution space `{c : Σ_k c_k · columns[k] = 0}`.
///
/// `columns` lists, for each unknown, its image vector in some target coordinate set.
pub fn nullspace<K: Key, T: Key>(field: Field, columns: &[(K, Row<T>)]) -> Vec<Row<K>> {
    // Gaussian elimination on the augmented vectors (image | identity): rows that
    // reduce to zero image carry a kernel vector in the identity part.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
    enum Aug<T, K> {
        Image(T),
        Tag(K),
    }
    let mut e: Echelon<Aug<T, K>> = Echelon::new(field);
    let mut kernel = Vec::new();
    for (k, col) in columns {
        let mut v: Row<Aug<T, K>> = col.iter().map(|(t, c)| (Aug::Image(t.clone()), c.clone())).collect();
        v.push((Aug::Tag(k.clone()), field.one()));
        let r = e.reduce(&v);
        let image_zero = r.keys().all(|a| matches!(a, Aug::Tag(_)));
        if image_zero {
            kernel.push(
                r.into_iter()
                    .map(|(a, c)| match a {
                        Aug::Tag(k) => (k, c),
                        Aug::Image(_) => unreachable!(),
                    })
                    .collect::<Row<K>>(),
            );
        } else {
            e.insert_map(r);
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: Field, v: &[(u32, i64)]) -> Row<u32> {
        v.iter().map(|&(k, c)| (k, f.from_i64(c))).collect()
    }

    #[test]
    fn rank_and_rref() {
        let f = Field::Rational;
        let e =
            Echelon::from_rows(f, [row(f, &[(0, 1), (1, 2)]), row(f, &[(0, 2), (1, 4)]), row(f, &[(1, 1), (2, 3)])]);
        assert_eq!(e.rank(), 2);
        let rows = e.into_rref();
        assert!(Echelon::is_rref(&rows));
        assert_eq!(rows[0], row(f, &[(0, 1), (2, -6)]));
    }

    #[test]
    fn kernel_vectors_vanish() {
        let f = Field::prime(5).unwrap();
        let cols = vec![
            (0u32, row(f, &[(0, 1), (1, 1)])),
            (1u32, row(f, &[(1, 1)])),
            (2u32, row(f, &[(0, 1)])),
            (3u32, row(f, &[(0, 2), (1, 2)])),
        ];
        let k = nullspace(f, &cols);
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (var, c) in v {
                for (t, a) in &cols[*var as usize].1 {
                    let e = acc.entry(*t).or_insert(f.zero());
                    *e = f.add(e, &f.mul(c, a));
                }
            }
            assert!(acc.values().all(Scalar::is_zero));
        }
    }
}
