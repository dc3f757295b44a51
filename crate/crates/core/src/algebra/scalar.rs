//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.
//!
//! Rationals act as "generic" constants: when a rational meets a residue in an
//! arithmetic operation it is first reduced modulo that residue's prime. Two
//! residues with different moduli never meet in well-formed input; doing so
//! panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for `Field::Prime` when none is given.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        ModInt {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn inverse(&self) -> Option<ModInt> {
        if self.value == 0 {
            return None;
        }
        // Fermat; modulus is prime.
        let mut base = self.value as u128;
        let m = self.modulus as u128;
        let mut exp = self.modulus - 2;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(ModInt {
            value: acc as u64,
            modulus: self.modulus,
        })
    }
}

/// The coefficient field chosen for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Embeds a rational number. Fails when the denominator vanishes mod p.
    pub fn embed(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime(p) => rational_mod(q, p)
                .map(Scalar::Mod)
                .ok_or_else(|| Error::NotInvertible(q.denom().to_string())),
        }
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::from(v),
            Field::Prime(p) => Scalar::Mod(ModInt::new(v as i128, p)),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let q = parse_rational(text)?;
        self.embed(&q)
    }

    /// Moves an existing scalar into this field.
    pub fn convert(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, Scalar::Rat(q)) => self.embed(q),
            (Field::Prime(p), Scalar::Mod(m)) if m.modulus == *p => Ok(s.clone()),
            (Field::Rational, Scalar::Mod(m)) => Ok(Scalar::from(m.value as i64)),
            (Field::Prime(p), Scalar::Mod(m)) => Ok(Scalar::Mod(ModInt::new(m.value as i128, *p))),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `q` for rationals, `p` for the default prime, `p=<prime>` otherwise.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "rational" => Ok(Field::Rational),
            "p" => Ok(Field::Prime(DEFAULT_PRIME)),
            _ => {
                let digits = s
                    .strip_prefix("p=")
                    .ok_or_else(|| Error::Precondition(format!("unknown field `{s}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad prime `{digits}`")))?;
                Field::prime(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
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

fn rational_mod(q: &BigRational, p: u64) -> Option<ModInt> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    let den = ModInt::new(den as i128, p).inverse()?;
    Some(ModInt::new((num as i128) * (den.value as i128), p))
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::parse(0, format!("bad scalar `{text}`"));
    let q = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
    };
    Ok(q)
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(ModInt),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(m) => m.value == 1,
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        let err = || Error::NotInvertible(self.to_string());
        match self {
            Scalar::Rat(q) if q.is_zero() => Err(err()),
            Scalar::Rat(q) => Ok(Scalar::Rat(q.recip())),
            Scalar::Mod(m) => m.inverse().map(Scalar::Mod).ok_or_else(err),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(m) => Field::Prime(m.modulus),
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        modop: impl Fn(u128, u128, u128) -> u128,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                assert_eq!(a.modulus, b.modulus, "mixed prime moduli");
                let m = a.modulus as u128;
                Scalar::Mod(ModInt {
                    value: modop(a.value as u128, b.value as u128, m) as u64,
                    modulus: a.modulus,
                })
            }
            (Scalar::Rat(a), Scalar::Mod(b)) => Scalar::Mod(coerce(a, b.modulus)).binop(rhs, rat, modop),
            (Scalar::Mod(a), Scalar::Rat(b)) => self.binop(&Scalar::Mod(coerce(b, a.modulus)), rat, modop),
        }
    }
}

fn coerce(q: &BigRational, p: u64) -> ModInt {
    rational_mod(q, p).unwrap_or_else(|| panic!("{q} has no image modulo {p}"))
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rat(q)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Scalar::Rat)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Mod(a), Scalar::Mod(b)) => a == b,
            (Scalar::Rat(a), Scalar::Mod(b)) | (Scalar::Mod(b), Scalar::Rat(a)) => {
                rational_mod(a, b.modulus) == Some(*b)
            }
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(a.cmp(b)),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Some(a.value.cmp(&b.value)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod(m) => write!(f, "{}", m.value),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b, m| (a + b) % m)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b, m| (a + m - b) % m)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b, m| a * b % m)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Mod(m) => Scalar::Mod(ModInt::new(-(m.value as i128), m.modulus)),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
