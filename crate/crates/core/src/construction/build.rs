use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construction::schedule::{f_dim_bound, FProvider, Schedule, ScheduleJson, StepCase, VChoice};
use crate::construction::tower::{Coords, LevelMap, Tower};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::subspace::{ComplementRule, Echelon, GradedSubspace, Row, SubspaceJson};
use crate::word::Word;

/// One inductive step: how level `n+1` was obtained from level `n`.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub n: usize,
    pub case: StepCase,
    /// The two monomials spanning `V(2^{n+1})` (pick and close steps).
    pub chosen: Option<[Word; 2]>,
    /// The complement of `V(2^{n+1})` inside `V(2^n)V(2^n)` (pick and close steps).
    pub complement: Option<GradedSubspace>,
}

#[derive(Clone, Debug)]
pub struct ConstructionState {
    schedule: Schedule,
    tower: Tower,
    steps: Vec<StepRecord>,
    f_spaces: BTreeMap<u32, GradedSubspace>,
}

/// Builds levels `0..=max_pow` under the schedule's own provider.
pub fn build(schedule: &Schedule, max_pow: usize) -> Result<ConstructionState> {
    let provider = schedule.provider()?;
    build_with(schedule, max_pow, provider.as_ref())
}

pub fn build_with(schedule: &Schedule, max_pow: usize, provider: &dyn FProvider) -> Result<ConstructionState> {
    schedule.validate()?;
    if max_pow > 24 {
        return Err(Error::Invalid(format!("max power {max_pow} is beyond reach")));
    }
    let field = schedule.field;
    let mut state = ConstructionState {
        schedule: schedule.clone(),
        tower: Tower::new(field),
        steps: Vec::new(),
        f_spaces: BTreeMap::new(),
    };
    for n in 0..max_pow {
        state.step(n, provider)?;
    }
    Ok(state)
}

fn pick(candidates: &[u32], choice: VChoice) -> Option<[u32; 2]> {
    if candidates.len() < 2 {
        return None;
    }
    Some(match choice {
        VChoice::Lex => [candidates[0], candidates[1]],
        VChoice::LexLast => [candidates[candidates.len() - 2], candidates[candidates.len() - 1]],
    })
}

impl ConstructionState {
    fn pair_words(&self, n: usize) -> Vec<Word> {
        let v = self.tower.level(n).v_words();
        v.iter().flat_map(|a| v.iter().map(move |b| a.concat(b))).collect()
    }

    fn step(&mut self, n: usize, provider: &dyn FProvider) -> Result<()> {
        let field = self.schedule.field;
        let case = self.schedule.step_case(n as u64);
        let pairs = self.pair_words(n);
        let d = self.tower.level(n).dim_v();
        let degree = 1usize << (n + 1);
        if case == StepCase::Square {
            self.tower.push_level(pairs, LevelMap::Square);
            self.steps.push(StepRecord { n, case, chosen: None, complement: None });
            return Ok(());
        }
        // Concatenation coordinates c = i·d + j index `pairs` in lex order.
        let mut p0: Echelon<u32> = Echelon::new(field);
        if let StepCase::Close { i, in_z: true } = case {
            if let Some(fs) = provider.provide(i, field, degree, &pairs)? {
                if fs.degree() != degree {
                    return Err(Error::Schedule(format!(
                        "provider returned degree {} for index {i}, expected {degree}",
                        fs.degree()
                    )));
                }
                if fs.field() != field {
                    return Err(Error::Schedule("provider returned a space over another field".into()));
                }
                if fs.dim() >= f_dim_bound(i) {
                    return Err(Error::Schedule(format!(
                        "provider space for index {i} has dimension {} ≥ bound",
                        fs.dim()
                    )));
                }
                for row in fs.finite_rows().ok_or_else(|| Error::Schedule("provider space must be finite".into()))? {
                    let bar = self.tower.project_blocks_row(&[n, n], &row);
                    let v: Row<u32> = bar.into_iter().map(|(k, c)| (k[0] * d as u32 + k[1], c)).collect();
                    p0.insert(v);
                }
                self.f_spaces.insert(i, fs);
            }
        }
        let non_pivots: Vec<u32> = (0..(d * d) as u32).filter(|c| !p0.is_pivot(c)).collect();
        let [m1, m2] = pick(&non_pivots, self.schedule.v_choice).ok_or_else(|| {
            Error::Construction(format!(
                "step {n}: fewer than two concatenation monomials lie outside the span of the projected F"
            ))
        })?;
        let chosen = [pairs[m1 as usize].clone(), pairs[m2 as usize].clone()];
        let vv = GradedSubspace::monomials(field, degree, pairs.iter().cloned())?;
        let v_next = GradedSubspace::monomials(field, degree, chosen.iter().cloned())?;
        let complement = if p0.rank() == 0 {
            v_next.complement(&vv, ComplementRule::MonomialLex)?
        } else {
            let mut rows: Vec<Row<Word>> = p0
                .rows()
                .iter()
                .map(|r| r.iter().map(|(c, x)| (pairs[*c as usize].clone(), x.clone())).collect())
                .collect();
            rows.extend(
                non_pivots
                    .iter()
                    .filter(|&&c| c != m1 && c != m2)
                    .map(|&c| vec![(pairs[c as usize].clone(), field.one())]),
            );
            GradedSubspace::from_rows(field, degree, rows)
        };
        // The chosen monomials must complement P inside V·V.
        if !complement.intersect(&v_next)?.is_zero() || complement.sum(&v_next)? != vv {
            return Err(Error::Construction(format!("step {n}: chosen monomials do not complement P")));
        }
        let post = select_post(field, &pairs, &complement, &chosen)?;
        self.tower.push_level(chosen.to_vec(), LevelMap::Select(post));
        self.steps.push(StepRecord { n, case, chosen: Some(chosen), complement: Some(complement) });
        Ok(())
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn field(&self) -> Field {
        self.schedule.field
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn max_pow(&self) -> usize {
        self.tower.top()
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    pub fn f_space(&self, i: u32) -> Option<&GradedSubspace> {
        self.f_spaces.get(&i)
    }

    pub fn f_spaces(&self) -> &BTreeMap<u32, GradedSubspace> {
        &self.f_spaces
    }

    /// `V(2^n)`.
    pub fn v(&self, n: usize) -> &GradedSubspace {
        self.tower.level(n).v()
    }

    /// `U(2^n)` in co-monomial form.
    pub fn u(&self, n: usize) -> Result<Arc<GradedSubspace>> {
        self.tower.kernel(n)
    }

    /// Whether every level up to `n` is spanned by monomials with monomial kernels.
    pub fn is_monomial(&self, n: usize) -> bool {
        self.tower.is_pure(n)
    }

    /// Copy with `π_n(w)` perturbed by `delta`; exercises the verifiers on broken towers.
    pub fn with_override(&self, n: usize, w: Word, delta: Coords) -> ConstructionState {
        let mut s = self.clone();
        s.tower.add_override(n, w, delta);
        s
    }

    /// Human-readable provenance lines, one per step.
    pub fn provenance(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| {
                let what = match s.case {
                    StepCase::Square => "case 1 (square)".to_string(),
                    StepCase::Pick => "case 2 (pick)".to_string(),
                    StepCase::Close { i, in_z } => {
                        format!("case 3 (close window {i}, {})", if in_z { "i in Z" } else { "i not in Z" })
                    }
                };
                let chosen = s.chosen.as_ref().map(|[a, b]| format!(", V = {{{a}, {b}}}")).unwrap_or_default();
                format!("level {} -> {}: {what}, dim V = {}{chosen}", s.n, s.n + 1, self.tower.level(s.n + 1).dim_v())
            })
            .collect()
    }

    pub fn cases_fired(&self) -> BTreeSet<u8> {
        self.steps.iter().map(|s| s.case.number()).collect()
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            format: 1,
            schedule: self.schedule.to_json(),
            max_pow: self.max_pow(),
            levels: (0..=self.max_pow())
                .map(|n| self.tower.level(n).v_words().iter().map(Word::to_string).collect())
                .collect(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    n: s.n,
                    case: s.case,
                    chosen: s.chosen.as_ref().map(|c| c.iter().map(Word::to_string).collect()),
                    complement: s.complement.as_ref().map(GradedSubspace::to_json),
                })
                .collect(),
            f_spaces: self.f_spaces.iter().map(|(i, s)| (i.to_string(), s.to_json())).collect(),
        }
    }

    /// Restores a state; the stored choices are replayed, not recomputed.
    pub fn from_json(j: &StateJson) -> Result<ConstructionState> {
        if j.format != 1 {
            return Err(Error::Format(format!("unsupported state format {}", j.format)));
        }
        let schedule = Schedule::from_json(&j.schedule)?;
        let field = schedule.field;
        let mut state =
            ConstructionState { schedule, tower: Tower::new(field), steps: Vec::new(), f_spaces: BTreeMap::new() };
        for (k, v) in &j.f_spaces {
            let i: u32 = k.parse().map_err(|_| Error::Format(format!("bad index `{k}`")))?;
            state.f_spaces.insert(i, GradedSubspace::from_json(v)?);
        }
        if j.steps.len() != j.max_pow {
            return Err(Error::Format("step count does not match max_pow".into()));
        }
        for (n, s) in j.steps.iter().enumerate() {
            if s.n != n || s.case != state.schedule.step_case(n as u64) {
                return Err(Error::Format(format!("step {n} does not match the schedule")));
            }
            let pairs = state.pair_words(n);
            if s.case == StepCase::Square {
                state.tower.push_level(pairs, LevelMap::Square);
                state.steps.push(StepRecord { n, case: s.case, chosen: None, complement: None });
                continue;
            }
            let chosen: Vec<Word> = s
                .chosen
                .as_ref()
                .ok_or_else(|| Error::Format(format!("step {n} lacks chosen monomials")))?
                .iter()
                .map(|w| w.parse())
                .collect::<Result<_>>()?;
            let chosen: [Word; 2] =
                chosen.try_into().map_err(|_| Error::Format(format!("step {n} needs two chosen monomials")))?;
            let complement = GradedSubspace::from_json(
                s.complement.as_ref().ok_or_else(|| Error::Format(format!("step {n} lacks its complement")))?,
            )?;
            let post = select_post(field, &pairs, &complement, &chosen)?;
            state.tower.push_level(chosen.to_vec(), LevelMap::Select(post));
            state.steps.push(StepRecord { n, case: s.case, chosen: Some(chosen), complement: Some(complement) });
        }
        for (n, words) in j.levels.iter().enumerate() {
            let stored: Vec<String> = state.tower.level(n).v_words().iter().map(Word::to_string).collect();
            if n <= state.max_pow() && &stored != words {
                return Err(Error::Format(format!("level {n} does not match the replayed construction")));
            }
        }
        Ok(state)
    }
}

/// Projection of `V⊗V` onto the span of the two chosen concatenations along `p`.
///
/// Entry `c` is the image of the `c`-th concatenation in the coordinates of the new level.
pub fn select_post(field: Field, pairs: &[Word], p: &GradedSubspace, chosen: &[Word; 2]) -> Result<Vec<Coords>> {
    let index: BTreeMap<&Word, u32> = pairs.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
    let idx = |w: &Word| -> Result<u32> {
        index.get(w).copied().ok_or_else(|| Error::Construction(format!("{w} is not a concatenation monomial")))
    };
    let (m1, m2) = (idx(&chosen[0])?, idx(&chosen[1])?);
    if m1 >= m2 {
        return Err(Error::Construction("chosen monomials must be distinct and ordered".into()));
    }
    if let Some(words) = p.words() {
        let mut post = vec![Vec::new(); pairs.len()];
        post[m1 as usize] = vec![(0, field.one())];
        post[m2 as usize] = vec![(1, field.one())];
        if words.contains(&chosen[0]) || words.contains(&chosen[1]) || words.len() + 2 != pairs.len() {
            return Err(Error::Construction("complement does not avoid the chosen monomials".into()));
        }
        return Ok(post);
    }
    let rows: Vec<Row<u32>> = p
        .finite_rows()
        .ok_or_else(|| Error::Construction("complement must be finite".into()))?
        .iter()
        .map(|r| r.iter().map(|(w, c)| Ok((idx(w)?, c.clone()))).collect::<Result<Row<u32>>>())
        .collect::<Result<_>>()?;
    let e = Echelon::from_echelon_rows(field, rows);
    if e.rank() + 2 != pairs.len() {
        return Err(Error::Construction(format!(
            "complement has dimension {}, expected {}",
            e.rank(),
            pairs.len() - 2
        )));
    }
    let free: Vec<u32> = (0..pairs.len() as u32).filter(|c| !e.is_pivot(c)).collect();
    let residue = |c: u32| -> [Scalar; 2] {
        let r = e.reduce(&[(c, field.one())]);
        [r.get(&free[0]).cloned().unwrap_or(field.zero()), r.get(&free[1]).cloned().unwrap_or(field.zero())]
    };
    let (a, b) = (residue(m1), residue(m2));
    // Solve residue(c) = s·a + t·b.
    let det = field.sub(&field.mul(&a[0], &b[1]), &field.mul(&a[1], &b[0]));
    if det.is_zero() {
        return Err(Error::Construction("chosen monomials are dependent modulo the complement".into()));
    }
    let inv = field.inv(&det);
    let mut post = Vec::with_capacity(pairs.len());
    for c in 0..pairs.len() as u32 {
        let r = residue(c);
        let s = field.mul(&inv, &field.sub(&field.mul(&r[0], &b[1]), &field.mul(&r[1], &b[0])));
        let t = field.mul(&inv, &field.sub(&field.mul(&a[0], &r[1]), &field.mul(&a[1], &r[0])));
        let mut img = Vec::new();
        if !s.is_zero() {
            img.push((0, s));
        }
        if !t.is_zero() {
            img.push((1, t));
        }
        post.push(img);
    }
    Ok(post)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub n: usize,
    #[serde(flatten)]
    pub case: StepCase,
    #[serde(default)]
    pub chosen: Option<Vec<String>>,
    #[serde(default)]
    pub complement: Option<SubspaceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub format: u32,
    pub schedule: ScheduleJson,
    pub max_pow: usize,
    pub levels: Vec<Vec<String>>,
    pub steps: Vec<StepJson>,
    #[serde(default)]
    pub f_spaces: BTreeMap<String, SubspaceJson>,
}
