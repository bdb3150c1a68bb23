//! Dense bit-packed row echelon over GF(2) on all `3^n` coordinates of `H(n)`.
//!
//! Only meant for small degrees; it serves as an independent reference for the sparse
//! representations.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::subspace::GradedSubspace;
use crate::word::{all_words, Word};

pub const MAX_DENSE_DEGREE: usize = 10;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct DenseSpace {
    degree: usize,
    ncols: usize,
    nwords: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<u32>,
}

impl DenseSpace {
    pub fn new(degree: usize) -> Result<DenseSpace> {
        if degree > MAX_DENSE_DEGREE {
            return Err(Error::TooLarge(format!("dense engine limited to degree {MAX_DENSE_DEGREE}")));
        }
        let ncols = 3usize.pow(degree as u32);
        Ok(DenseSpace { degree, ncols, nwords: ncols.div_ceil(64), rows: Vec::new(), pivot_row: vec![NONE; ncols] })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn zero_vector(&self) -> Vec<u64> {
        vec![0; self.nwords]
    }

    pub fn unit(&self, col: usize) -> Vec<u64> {
        let mut v = self.zero_vector();
        v[col / 64] |= 1 << (col % 64);
        v
    }

    /// Dense image of a GF(2) polynomial of this degree.
    pub fn vector(&self, p: &Poly) -> Result<Vec<u64>> {
        if !p.field().is_gf2() {
            return Err(Error::FieldMismatch);
        }
        p.require_degree(self.degree)?;
        let mut v = self.zero_vector();
        for w in p.terms().keys() {
            let col = w.index_u64().unwrap() as usize;
            v[col / 64] ^= 1 << (col % 64);
        }
        Ok(v)
    }

    pub fn word_vector(&self, w: &Word) -> Vec<u64> {
        self.unit(w.index_u64().unwrap() as usize)
    }

    /// Reduces in place; returns the lowest coordinate that could not be eliminated.
    pub fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        let mut block = 0;
        while block < self.nwords {
            let bits = v[block];
            if bits == 0 {
                block += 1;
                continue;
            }
            let col = block * 64 + bits.trailing_zeros() as usize;
            let r = self.pivot_row[col];
            if r == NONE {
                return Some(col);
            }
            let row = &self.rows[r as usize];
            for (a, b) in v[block..].iter_mut().zip(&row[block..]) {
                *a ^= *b;
            }
        }
        None
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Inserts a vector; true when the rank grows.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        match self.reduce(&mut v) {
            None => false,
            Some(col) => {
                self.pivot_row[col] = self.rows.len() as u32;
                self.rows.push(v);
                true
            }
        }
    }

    /// Dense copy of a GF(2) subspace; co-monomial spaces are expanded word by word.
    pub fn from_subspace(s: &GradedSubspace) -> Result<DenseSpace> {
        if s.field() != Field::GF2 {
            return Err(Error::FieldMismatch);
        }
        let mut d = DenseSpace::new(s.degree())?;
        for p in s.basis(d.ncols)? {
            let v = d.vector(&p)?;
            d.insert(v);
        }
        Ok(d)
    }

    /// Whether the dense span equals `s` (dimension and containment).
    pub fn same_as(&self, s: &GradedSubspace) -> Result<bool> {
        if s.dim_usize() != Some(self.rank()) {
            return Ok(false);
        }
        for p in s.basis(self.ncols)? {
            if !self.contains(&self.vector(&p)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection with another dense space by solving for common vectors.
    pub fn intersect(&self, other: &DenseSpace) -> Result<DenseSpace> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        // Zassenhaus on doubled coordinates [a | a], [b | 0].
        let mut big = DenseSpace {
            degree: self.degree,
            ncols: 2 * self.ncols,
            nwords: (2 * self.ncols).div_ceil(64),
            rows: Vec::new(),
            pivot_row: vec![NONE; 2 * self.ncols],
        };
        let doubled = |v: &[u64], copy: bool| {
            let mut out = vec![0u64; big_nwords(self.ncols)];
            for col in ones(v, self.ncols) {
                out[col / 64] |= 1 << (col % 64);
                if copy {
                    let c = col + self.ncols;
                    out[c / 64] |= 1 << (c % 64);
                }
            }
            out
        };
        for r in &self.rows {
            big.insert(doubled(r, true));
        }
        for r in &other.rows {
            big.insert(doubled(r, false));
        }
        let mut out = DenseSpace::new(self.degree)?;
        for r in &big.rows {
            let cols: Vec<usize> = ones(r, 2 * self.ncols).collect();
            if cols.first().is_some_and(|&c| c >= self.ncols) {
                let mut v = out.zero_vector();
                for c in cols {
                    let c = c - self.ncols;
                    v[c / 64] |= 1 << (c % 64);
                }
                out.insert(v);
            }
        }
        Ok(out)
    }

    pub fn sum(&self, other: &DenseSpace) -> DenseSpace {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// All words of the component, in index order.
    pub fn words(&self) -> impl Iterator<Item = Word> {
        all_words(self.degree)
    }
}

fn big_nwords(ncols: usize) -> usize {
    (2 * ncols).div_ceil(64)
}

fn ones(v: &[u64], limit: usize) -> impl Iterator<Item = usize> + '_ {
    v.iter().enumerate().flat_map(move |(i, &b)| {
        (0..64).filter(move |k| b >> k & 1 == 1).map(move |k| i * 64 + k).filter(move |&c| c < limit)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_spaces() {
        let mut d = DenseSpace::new(2).unwrap();
        let f = Field::GF2;
        assert!(d.insert(d.vector(&Poly::parse("xx+xy", f).unwrap()).unwrap()));
        assert!(d.insert(d.vector(&Poly::parse("xy+yy", f).unwrap()).unwrap()));
        assert!(!d.insert(d.vector(&Poly::parse("xx+yy", f).unwrap()).unwrap()));
        assert_eq!(d.rank(), 2);
        assert!(d.contains(&d.vector(&Poly::parse("xx+yy", f).unwrap()).unwrap()));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let mut a = DenseSpace::new(1).unwrap();
        a.insert(a.unit(0));
        a.insert(a.unit(1));
        let mut b = DenseSpace::new(1).unwrap();
        b.insert(b.unit(1));
        b.insert(b.unit(2));
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&i.unit(1)));
        assert_eq!(a.sum(&b).rank(), 3);
    }
}
