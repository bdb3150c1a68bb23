//! Construction parameters: windows, the index set Z, the F provider, tie-breaking.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::subspace::{GradedSubspace, SubspaceJson};
use crate::word::Word;

pub const DEFAULT_ONSET: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZSet {
    /// Every index produced by the enumeration map θ.
    Theta,
    Explicit(BTreeSet<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VChoice {
    /// The two lexicographically smallest admissible monomials.
    #[serde(rename = "lex")]
    Lex,
    /// The two lexicographically largest admissible monomials.
    #[serde(rename = "lex-last")]
    LexLast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProviderSpec {
    None,
    Random { seed: u64 },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub field: Field,
    pub onset: u32,
    pub z_set: ZSet,
    pub v_choice: VChoice,
    pub provider: ProviderSpec,
}

/// Which branch of the inductive step produces level `n+1` from level `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum StepCase {
    /// `n` and `n+1` lie in the same window: `V(2^{n+1}) = V(2^n)V(2^n)`.
    Square,
    /// `n` lies outside every window: two monomials are picked from `V(2^n)V(2^n)`.
    Pick,
    /// `n` closes window `i`; F_i is consumed when `i ∈ Z`.
    Close { i: u32, in_z: bool },
}

impl StepCase {
    /// The numbering used in reports: 1 square, 2 pick, 3 close.
    pub fn number(&self) -> u8 {
        match self {
            StepCase::Square => 1,
            StepCase::Pick => 2,
            StepCase::Close { .. } => 3,
        }
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            field: Field::GF2,
            onset: DEFAULT_ONSET,
            z_set: ZSet::Theta,
            v_choice: VChoice::Lex,
            provider: ProviderSpec::None,
        }
    }
}

impl Schedule {
    /// A reduced-onset schedule exercising every branch at small degrees.
    pub fn scaled(onset: u32, z: &[u32], provider: ProviderSpec) -> Schedule {
        Schedule { onset, z_set: ZSet::Explicit(z.iter().copied().collect()), provider, ..Schedule::default() }
    }

    pub fn is_scaled(&self) -> bool {
        self.onset != DEFAULT_ONSET
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.onset < 2 || self.onset > 40 {
            return Err(Error::Schedule(format!("onset {} outside [2, 40]", self.onset)));
        }
        if let ZSet::Explicit(z) = &self.z_set {
            if let Some(i) = z.iter().find(|&&i| i < self.onset) {
                return Err(Error::Schedule(format!("index {i} in Z lies below the onset {}", self.onset)));
            }
        }
        Ok(())
    }

    /// Window `[2^i − i − 1, 2^i − 1]` for index `i`.
    pub fn window(i: u32) -> (u64, u64) {
        let top = (1u64 << i) - 1;
        (top - i as u64, top)
    }

    /// Index of the window containing level `n`, if any.
    pub fn window_of(&self, n: u64) -> Option<u32> {
        let mut i = self.onset;
        while i < 63 {
            let (lo, hi) = Self::window(i);
            if lo > n {
                return None;
            }
            if n <= hi {
                return Some(i);
            }
            i += 1;
        }
        None
    }

    pub fn in_window(&self, n: u64) -> bool {
        self.window_of(n).is_some()
    }

    pub fn in_z(&self, i: u32) -> bool {
        match &self.z_set {
            ZSet::Explicit(z) => z.contains(&i),
            ZSet::Theta => i >= self.onset && crate::nil::theta_image_contains(self.field, i),
        }
    }

    /// The branch used to build level `n+1`.
    ///
    /// The closing branch fires at the right end of a window; the squaring branch inside
    /// a window. Windows of consecutive indices can be adjacent at small onsets, so the
    /// decision uses window membership of `n` rather than of `n+1`.
    pub fn step_case(&self, n: u64) -> StepCase {
        match self.window_of(n) {
            Some(i) if n == Self::window(i).1 => StepCase::Close { i, in_z: self.in_z(i) },
            Some(_) => StepCase::Square,
            None => StepCase::Pick,
        }
    }

    pub fn provider(&self) -> Result<Box<dyn FProvider>> {
        Ok(match &self.provider {
            ProviderSpec::None => Box::new(NoProvider),
            ProviderSpec::Random { seed } => Box::new(RandomProvider { seed: *seed, max_dim: 100 }),
            ProviderSpec::File(path) => Box::new(FileProvider::load(path)?),
        })
    }

    pub fn to_json(&self) -> ScheduleJson {
        ScheduleJson {
            field: self.field,
            onset: self.onset,
            z_set: match &self.z_set {
                ZSet::Theta => None,
                ZSet::Explicit(z) => Some(z.iter().copied().collect()),
            },
            v_choice: self.v_choice,
            f_provider: match &self.provider {
                ProviderSpec::None => "none".into(),
                ProviderSpec::Random { seed } => format!("random:{seed}"),
                ProviderSpec::File(p) => format!("file:{}", p.display()),
            },
        }
    }

    pub fn from_json(j: &ScheduleJson) -> Result<Schedule> {
        let s = Schedule {
            field: j.field,
            onset: j.onset,
            z_set: match &j.z_set {
                None => ZSet::Theta,
                Some(z) => ZSet::Explicit(z.iter().copied().collect()),
            },
            v_choice: j.v_choice,
            provider: parse_provider(&j.f_provider)?,
        };
        s.validate()?;
        Ok(s)
    }
}

pub fn parse_provider(text: &str) -> Result<ProviderSpec> {
    if text == "none" {
        return Ok(ProviderSpec::None);
    }
    if let Some(seed) = text.strip_prefix("random:") {
        let seed = seed.parse().map_err(|_| Error::Schedule(format!("bad provider seed `{seed}`")))?;
        return Ok(ProviderSpec::Random { seed });
    }
    if let Some(path) = text.strip_prefix("file:") {
        return Ok(ProviderSpec::File(PathBuf::from(path)));
    }
    Err(Error::Schedule(format!("unknown provider `{text}`")))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScheduleJson {
    #[serde(default)]
    pub field: Field,
    #[serde(default = "default_onset")]
    pub onset: u32,
    #[serde(default)]
    pub z_set: Option<Vec<u32>>,
    #[serde(default = "default_v_choice")]
    pub v_choice: VChoice,
    #[serde(default = "default_provider")]
    pub f_provider: String,
}

fn default_onset() -> u32 {
    DEFAULT_ONSET
}

fn default_v_choice() -> VChoice {
    VChoice::Lex
}

fn default_provider() -> String {
    "none".into()
}

/// Supplies the space F_i ⊆ H(2^{2^i}) consumed when window `i` closes with `i ∈ Z`.
pub trait FProvider: Send + Sync {
    /// `pair_words` lists the concatenations `V·V` available at that step, in lex order.
    fn provide(&self, i: u32, field: Field, degree: usize, pair_words: &[Word]) -> Result<Option<GradedSubspace>>;
}

pub struct NoProvider;

impl FProvider for NoProvider {
    fn provide(&self, _: u32, _: Field, _: usize, _: &[Word]) -> Result<Option<GradedSubspace>> {
        Ok(None)
    }
}

/// Random sparse mock spaces: each basis vector mixes a few concatenation monomials
/// with a few arbitrary words of the same degree.
///
/// Not a model of any particular F; it only respects the degree and dimension bounds.
pub struct RandomProvider {
    pub seed: u64,
    pub max_dim: usize,
}

impl FProvider for RandomProvider {
    fn provide(&self, i: u32, field: Field, degree: usize, pair_words: &[Word]) -> Result<Option<GradedSubspace>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1)));
        let target = self.max_dim.min(pair_words.len().saturating_sub(3) / 2).max(1);
        let mut vectors = Vec::with_capacity(target);
        for _ in 0..target {
            let mut terms = Vec::new();
            // A balanced pair among the lowest concatenations keeps the projected span off
            // one low monomial, which then carries nonzero residues of the others. The
            // remaining concatenation terms avoid that block.
            let block = if pair_words.len() > 24 { 12 } else { pair_words.len() };
            if block >= 2 {
                let low: Vec<usize> = (0..block).collect();
                let pick: Vec<&usize> = low.choose_multiple(&mut rng, 2).collect();
                let c = field.random_nonzero(&mut rng);
                terms.push((pair_words[*pick[0]].clone(), c.clone()));
                terms.push((pair_words[*pick[1]].clone(), field.neg(&c)));
            }
            let k = rng.gen_range(1..=3);
            for w in pair_words[block.min(pair_words.len() - 1)..].choose_multiple(&mut rng, k) {
                terms.push((w.clone(), field.random_nonzero(&mut rng)));
            }
            for _ in 0..rng.gen_range(0..=2) {
                let letters = (0..degree).map(|_| rng.gen_range(0..3u8)).collect();
                terms.push((Word::from_letters(letters), field.random_nonzero(&mut rng)));
            }
            vectors.push(Poly::from_terms(field, terms));
        }
        GradedSubspace::span(field, &vectors, degree).map(Some)
    }
}

/// Spaces read from a JSON object mapping `i` to a serialized subspace.
pub struct FileProvider {
    spaces: BTreeMap<u32, GradedSubspace>,
}

impl FileProvider {
    pub fn load(path: &std::path::Path) -> Result<FileProvider> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("reading provider file {}: {e}", path.display())))?;
        let raw: BTreeMap<String, SubspaceJson> = serde_json::from_str(&text)?;
        let mut spaces = BTreeMap::new();
        for (k, v) in raw {
            let i: u32 = k.parse().map_err(|_| Error::Format(format!("bad index `{k}`")))?;
            spaces.insert(i, GradedSubspace::from_json(&v)?);
        }
        Ok(FileProvider { spaces })
    }
}

impl FProvider for FileProvider {
    fn provide(&self, i: u32, _: Field, _: usize, _: &[Word]) -> Result<Option<GradedSubspace>> {
        Ok(self.spaces.get(&i).cloned())
    }
}

/// `2^{2^{i+1}} − 2`, the strict upper bound on dim F_i.
pub fn f_dim_bound(i: u32) -> BigUint {
    (BigUint::from(1u32) << (1usize << (i + 1))) - 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(Schedule::window(5), (26, 31));
        assert_eq!(Schedule::window(2), (1, 3));
        let s = Schedule::scaled(2, &[2], ProviderSpec::None);
        assert_eq!(s.window_of(0), None);
        assert_eq!(s.window_of(1), Some(2));
        assert_eq!(s.window_of(4), Some(3));
        assert_eq!(s.window_of(8), None);
        assert_eq!(s.window_of(11), Some(4));
        let cases: Vec<u8> = (0..9).map(|n| s.step_case(n).number()).collect();
        assert_eq!(cases, vec![2, 1, 1, 3, 1, 1, 1, 3, 2]);
    }

    #[test]
    fn default_has_no_window_below_26() {
        let s = Schedule::default();
        assert!((0..26).all(|n| s.step_case(n) == StepCase::Pick));
        assert_eq!(s.step_case(26), StepCase::Square);
    }

    #[test]
    fn json_round_trip() {
        let s = Schedule::scaled(2, &[2, 3], ProviderSpec::Random { seed: 7 });
        let j = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(Schedule::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), s);
        let d: ScheduleJson =
            serde_json::from_str(r#"{"field":{"kind":"gf","p":2},"onset":5,"v_choice":"lex","f_provider":"none"}"#)
                .unwrap();
        assert_eq!(Schedule::from_json(&d).unwrap(), Schedule::default());
        assert!(Schedule::from_json(&ScheduleJson { onset: 1, ..d }).is_err());
    }

    #[test]
    fn bound() {
        assert_eq!(f_dim_bound(2), BigUint::from(254u32));
    }
}
