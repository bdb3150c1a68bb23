//! Monomials over the alphabet {x, y, z}.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const X: u8 = 0;
pub const Y: u8 = 1;
pub const Z: u8 = 2;

const LETTERS: [char; 3] = ['x', 'y', 'z'];

/// A word; letters are stored as 0, 1, 2 for x, y, z.
///
/// Words are ordered by degree first and lexicographically within a degree, which
/// matches the base-3 index order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Word {
        debug_assert!(letters.iter().all(|&l| l < 3));
        Word(letters)
    }

    pub fn from_slice(letters: &[u8]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    /// `letter` repeated `n` times.
    pub fn power(letter: u8, n: usize) -> Word {
        Word(vec![letter; n])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn contains_letter(&self, l: u8) -> bool {
        self.0.contains(&l)
    }

    /// Index below `3^degree`, if it fits in 64 bits (degree ≤ 40).
    pub fn index_u64(&self) -> Option<u64> {
        if self.0.len() > 40 {
            return None;
        }
        Some(self.0.iter().fold(0u64, |acc, &l| acc * 3 + l as u64))
    }

    pub fn from_index_u64(n: usize, mut k: u64) -> Word {
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (k % 3) as u8;
            k /= 3;
        }
        Word(v)
    }
}

/// Base-3 index of a word (x→0, y→1, z→2); index order equals lexicographic order.
pub fn word_index(w: &Word) -> BigUint {
    match w.index_u64() {
        Some(k) => BigUint::from(k),
        None => w.0.iter().fold(BigUint::zero(), |acc, &l| acc * 3u32 + l as u32),
    }
}

/// Inverse of [`word_index`] on words of degree `n`.
pub fn word_from_index(n: usize, k: &BigUint) -> Result<Word> {
    if *k >= pow3(n) {
        return Err(Error::IndexRange { n, k: k.to_string() });
    }
    if let Some(k) = k.to_u64() {
        return Ok(Word::from_index_u64(n, k));
    }
    let mut rest = k.clone();
    let mut v = vec![0u8; n];
    let three = BigUint::from(3u32);
    for slot in v.iter_mut().rev() {
        *slot = (&rest % &three).to_u8().expect("digit");
        rest /= &three;
    }
    Ok(Word(v))
}

/// `3^n` as an exact integer.
pub fn pow3(n: usize) -> BigUint {
    BigUint::from(3u32).pow(n as u32)
}

/// All words of degree `n` in index order.
pub fn all_words(n: usize) -> impl Iterator<Item = Word> {
    let count = 3u64.checked_pow(n as u32).expect("degree too large to enumerate");
    (0..count).map(move |k| Word::from_index_u64(n, k))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            write!(f, "{}", LETTERS[l as usize])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut v = Vec::with_capacity(s.len());
        for (pos, c) in s.char_indices() {
            v.push(match c {
                'x' => X,
                'y' => Y,
                'z' => Z,
                _ => return Err(Error::Parse { pos, msg: format!("unexpected letter `{c}`") }),
            });
        }
        Ok(Word(v))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        assert_eq!(Word::from_index_u64(1, 0).to_string(), "x");
        assert_eq!(Word::from_index_u64(1, 1).to_string(), "y");
        assert_eq!(Word::from_index_u64(1, 2).to_string(), "z");
        assert_eq!(word_index(&"xy".parse().unwrap()), BigUint::from(1u32));
        assert_eq!(word_index(&"yx".parse().unwrap()), BigUint::from(3u32));
    }

    #[test]
    fn round_trip_degree_five() {
        for k in 0..243u32 {
            let w = word_from_index(5, &BigUint::from(k)).unwrap();
            assert_eq!(word_index(&w), BigUint::from(k));
        }
        assert!(word_from_index(5, &BigUint::from(243u32)).is_err());
    }

    #[test]
    fn big_degree_round_trip() {
        let w: Word = "xyzzyxxyzzyxxyzzyxxyzzyxxyzzyxxyzzyxxyzzyxxyz".parse().unwrap();
        let k = word_index(&w);
        assert_eq!(word_from_index(w.degree(), &k).unwrap(), w);
    }

    #[test]
    fn order_matches_index() {
        let words: Vec<Word> = all_words(3).collect();
        for pair in words.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert!("z".parse::<Word>().unwrap() < "xx".parse::<Word>().unwrap());
    }
}
