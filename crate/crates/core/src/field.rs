//! Coefficient fields: GF(p) for a prime p, and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    #[serde(rename = "gf")]
    Prime { p: u64 },
    #[serde(rename = "q")]
    Rational,
}

/// A field element. Residues are kept in `[0, p)`, fractions reduced with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(Box<BigRational>),
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime { p: 2 }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub const GF2: Field = Field::Prime { p: 2 };

    pub fn prime(p: u64) -> Result<Field> {
        let f = Field::Prime { p };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Field::Prime { p } if !is_prime(p) => Err(Error::BadField(format!("{p} is not prime"))),
            Field::Prime { p } if p >= 1 << 62 => Err(Error::BadField(format!("{p} is too large"))),
            _ => Ok(()),
        }
    }

    /// Parses `gf2`, `gf:7`, `gf7`, `q`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "rationals" {
            return Ok(Field::Rational);
        }
        let digits =
            t.strip_prefix("gf:").or_else(|| t.strip_prefix("gf")).ok_or_else(|| Error::BadField(text.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| Error::BadField(text.to_string()))?;
        Field::prime(p)
    }

    pub fn is_gf2(&self) -> bool {
        matches!(self, Field::Prime { p: 2 })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime { .. } => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime { .. } => Scalar::Mod(1),
            Field::Rational => Scalar::Rat(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Prime { p } => Scalar::Mod(v.rem_euclid(p as i64) as u64),
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Prime { p } => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Mod(u64::try_from(r).expect("residue fits"))
            }
            Field::Rational => Scalar::Rat(Box::new(BigRational::from_integer(v.clone()))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % p as u128) as u64)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x + &**y)),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (*self, a) {
            (Field::Prime { p }, Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(Box::new(-&**x)),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (Field::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(Box::new(&**x * &**y)),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match (*self, a) {
            (Field::Prime { p }, Scalar::Mod(x)) => Scalar::Mod(pow_mod(*x, p - 2, p)),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(Box::new(x.recip())),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses a coefficient literal: an integer, or `a/b` over the rationals.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::BadCoefficient(text.to_string());
        match self {
            Field::Prime { .. } => {
                let v: BigInt = t.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&v))
            }
            Field::Rational => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (t, "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(Box::new(BigRational::new(num, den))))
            }
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        a.to_string()
    }

    /// Whether `a` is a valid canonical element of this field.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (*self, a) {
            (Field::Prime { p }, Scalar::Mod(x)) => *x < p,
            (Field::Rational, Scalar::Rat(x)) => x.denom().is_positive(),
            _ => false,
        }
    }

    /// A uniformly chosen nonzero element (small fractions over the rationals).
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Prime { p } => Scalar::Mod(rng.gen_range(1..p)),
            Field::Rational => {
                let mut num: i64 = rng.gen_range(1..=5);
                if rng.gen_bool(0.5) {
                    num = -num;
                }
                let den: i64 = rng.gen_range(1..=3);
                Scalar::Rat(Box::new(BigRational::new(num.into(), den.into())))
            }
        }
    }

    /// Elements `1..p` in order; `None` for the rationals.
    pub fn nonzero_elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Prime { p } if p <= 1 << 16 => Some((1..p).map(Scalar::Mod).collect()),
            _ => None,
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }

    /// True for values printed with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Rat(x) => x.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime { p } => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.add(&a, &b), Scalar::Mod(1));
        assert_eq!(f.mul(&a, &b), Scalar::Mod(1));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
    }

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rational;
        let a = q.parse_scalar("2/4").unwrap();
        assert_eq!(a.to_string(), "1/2");
        let b = q.parse_scalar("-3").unwrap();
        assert_eq!(q.mul(&a, &b).to_string(), "-3/2");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.owns(&q.parse_scalar("5/-10").unwrap()));
    }

    #[test]
    fn field_parse() {
        assert_eq!(Field::parse("gf2").unwrap(), Field::GF2);
        assert_eq!(Field::parse("GF:5").unwrap(), Field::Prime { p: 5 });
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
        assert!(Field::parse("gf4").is_err());
    }

    #[test]
    fn fractions_rejected_mod_p() {
        assert!(Field::GF2.parse_scalar("1/2").is_err());
        assert_eq!(Field::prime(3).unwrap().parse_scalar("5").unwrap(), Scalar::Mod(2));
    }
}
