//! Exact scalars: rationals and elements of a single quadratic extension.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The base field scalar: an arbitrary-precision rational in canonical form.
pub type Scalar = BigRational;

/// Field operations shared by [`Scalar`] and [`QuadExt`].
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_scalar(q: &Scalar) -> Self;
}

impl Field for Scalar {
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Serde adapter writing a rational as the string `"p/q"` (or `"p"`).
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// A rational that serializes as a string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_scalar::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_scalar::deserialize(d).map(Rat)
    }
}

impl From<Scalar> for Rat {
    fn from(q: Scalar) -> Self {
        Rat(q)
    }
}

/// Writes `n = s^2 * d` with `d` squarefree (up to factors beyond the trial bound).
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= bound {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    } else {
        d *= rest;
    }
    (s, sign * d)
}

/// Returns `Some(r)` with `r^2 = q` when `q` is the square of a rational.
pub fn rational_sqrt(q: &Scalar) -> Option<Scalar> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// An element `a + b*sqrt(d)` of the quadratic extension Q(sqrt d).
///
/// `d` is a squarefree integer different from 1; rational values carry `b = 0`
/// and `d = 1`. Arithmetic between two irrational elements requires equal `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Scalar,
    b: Scalar,
    d: BigInt,
}

impl QuadExt {
    pub fn new(a: Scalar, b: Scalar, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        let (s, core) = split_square(&d);
        if core.is_one() {
            return Self::rational(a + b * Scalar::from_integer(s));
        }
        Self { a, b: b * Scalar::from_integer(s), d: core }
    }

    pub fn rational(a: Scalar) -> Self {
        Self { a, b: Scalar::zero(), d: BigInt::one() }
    }

    /// The square root of a rational, as an element of Q(sqrt d) for suitable d.
    pub fn sqrt_of(q: &Scalar) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let num = q.numer() * q.denom();
        let (s, d) = split_square(&num);
        let coef = Scalar::new(s, q.denom().clone());
        if d.is_one() {
            Self::rational(coef)
        } else {
            Self { a: Scalar::zero(), b: coef, d }
        }
    }

    pub fn re(&self) -> &Scalar {
        &self.a
    }

    pub fn im(&self) -> &Scalar {
        &self.b
    }

    /// The radicand; 1 for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Scalar> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    fn common_d(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!("arithmetic across different quadratic extensions: sqrt({}) and sqrt({})", self.d, other.d)
        }
    }

    fn norm(&self) -> Scalar {
        &self.a * &self.a - &self.b * &self.b * Scalar::from_integer(self.d.clone())
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let b = if self.b.is_one() {
            root
        } else if self.b == -Scalar::one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else if b.starts_with('-') {
            write!(f, "{} - {}", self.a, &b[1..])
        } else {
            write!(f, "{} + {b}", self.a)
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        Self::rational(Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        Self::rational(Scalar::one())
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.common_d(&o);
        Self::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = self.common_d(&o);
        Self::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.common_d(&o);
        let dq = Scalar::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dq;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::new(a, b, d)
    }
}

impl Div for QuadExt {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.is_zero(), "division by zero in Q(sqrt d)");
        let n = o.norm();
        let inv = Self::new(&o.a / &n, -(&o.b / &n), o.d.clone());
        self * inv
    }
}

impl Field for QuadExt {
    fn from_scalar(q: &Scalar) -> Self {
        Self::rational(q.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtWire {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadExtWire {
            a: Rat(self.a.clone()),
            b: Rat(self.b.clone()),
            d: Rat(Scalar::from_integer(self.d.clone())),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QuadExtWire::deserialize(d)?;
        // a + b*sqrt(p/q) = a + (b/q)*sqrt(p*q)
        let dq = w.d.0;
        let rad = dq.numer() * dq.denom();
        let b = w.b.0 / Scalar::from_integer(dq.denom().clone());
        Ok(QuadExt::new(w.a.0, b, rad))
    }
}

/// Exact integer value of a small rational, if it is one.
pub fn to_i64(q: &Scalar) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn lcm_of_denominators<'a>(qs: impl Iterator<Item = &'a Scalar>) -> BigInt {
    qs.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
