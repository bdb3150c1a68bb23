//! Kernels of tensor products of level projections.
//!
//! For consecutive blocks of levels `l_1, …, l_k`, the kernel of
//! `π_{l_1} ⊗ … ⊗ π_{l_k}` equals `Σ_t H·U(2^{l_t})·H` with `U` at block `t`, and its
//! monomial complement is the product `V(2^{l_1})⋯V(2^{l_k})`.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::construction::tower::Tower;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::subspace::{nullspace, GradedSubspace, Row, ENUMERATION_CAP};
use crate::word::{pow3, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockKernel {
    pub levels: Vec<usize>,
}

impl BlockKernel {
    pub fn new(levels: Vec<usize>) -> BlockKernel {
        BlockKernel { levels }
    }

    pub fn degree(&self) -> usize {
        self.levels.iter().map(|&l| 1usize << l).sum()
    }

    fn check(&self, tower: &Tower) -> Result<()> {
        match self.levels.iter().max() {
            Some(&l) if l > tower.top() => Err(Error::Range { degree: self.degree(), needed: l, built: tower.top() }),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, tower: &Tower, f: &Poly) -> Result<bool> {
        self.check(tower)?;
        f.require_degree(self.degree())?;
        let row: Row<Word> = f.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        Ok(tower.project_blocks_row(&self.levels, &row).is_empty())
    }

    pub fn contains_word(&self, tower: &Tower, w: &Word) -> bool {
        tower.project_blocks(&self.levels, w.letters()).is_empty()
    }

    /// `Π dim V(2^{l_t})`.
    pub fn codim(&self, tower: &Tower) -> BigUint {
        self.levels.iter().map(|&l| BigUint::from(tower.level(l).dim_v())).product()
    }

    /// Dimension `3^N − Π dim V`, valid when every `π` is onto its `V`.
    pub fn dim(&self, tower: &Tower) -> BigUint {
        pow3(self.degree()) - self.codim(tower)
    }

    /// Ordered product of the `V` monomials.
    pub fn complement_words(&self, tower: &Tower) -> Result<Vec<Word>> {
        self.check(tower)?;
        let mut acc = vec![Word::empty()];
        for &l in &self.levels {
            let vs = tower.level(l).v_words();
            if acc.len().saturating_mul(vs.len()) > ENUMERATION_CAP {
                return Err(Error::TooLarge("product of V monomials".into()));
            }
            acc = acc.iter().flat_map(|a| vs.iter().map(move |v| a.concat(v))).collect();
        }
        Ok(acc)
    }

    /// The kernel as a co-monomial subspace: excluded set = product of the level supports.
    pub fn materialize(&self, tower: &Tower) -> Result<GradedSubspace> {
        self.check(tower)?;
        let mut excluded = vec![Word::empty()];
        for &l in &self.levels {
            let s = tower.support(l)?;
            if excluded.len().saturating_mul(s.len()) > ENUMERATION_CAP {
                return Err(Error::TooLarge("block kernel support".into()));
            }
            excluded = excluded.iter().flat_map(|a| s.iter().map(move |v| a.concat(v))).collect();
        }
        let field = tower.field();
        let all_pure = self.levels.iter().all(|&l| tower.is_pure(l));
        let rows = if all_pure {
            Vec::new()
        } else {
            let columns: Vec<(Word, Row<Vec<u32>>)> =
                excluded.iter().map(|w| (w.clone(), tower.project_blocks(&self.levels, w.letters()))).collect();
            nullspace(field, &columns)
        };
        let excluded: BTreeSet<Word> = excluded.into_iter().collect();
        GradedSubspace::comonomial(field, self.degree(), excluded, rows)
    }
}
