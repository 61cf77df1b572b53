//! Exact rational numbers.
//!
//! Values whose numerator and denominator fit comfortably in `i128` are kept
//! in a machine-word representation; anything larger is promoted to
//! [`BigRational`]. The representation is canonical (a value that fits the
//! small form is never stored big), so derived equality and hashing agree
//! with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Magnitude bound for the small representation. Keeping one spare bit
/// below `i128::MAX` means negation and absolute value never overflow.
const SMALL_LIMIT: u128 = 1 << 126;

#[derive(Clone)]
enum Repr {
    /// Reduced fraction with `den > 0`, `|num| < SMALL_LIMIT`, `den < SMALL_LIMIT`.
    Small { num: i128, den: i128 },
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("exponent out of range in `{0}`")]
    Exponent(String),
}

fn fits(v: u128) -> bool {
    v < SMALL_LIMIT
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if (a | b) >> 64 == 0 {
        gcd_u64(a as u64, b as u64) as u128
    } else {
        a.gcd(&b)
    }
}

/// Binary gcd.
fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn as_i64(v: i128) -> Option<i64> {
    i64::try_from(v).ok()
}

/// `a/b + c/d` for reduced operands with positive denominators; the
/// result needs at most one small gcd.
fn add_i64(a: i64, b: i64, c: i64, d: i64) -> Rational {
    if b == d {
        let n = a as i128 + c as i128;
        if b == 1 {
            return Rational(Repr::Small { num: n, den: 1 });
        }
        return Rational::from_i128_pair(n, b as i128);
    }
    let g = gcd_u64(b as u64, d as u64) as i64;
    if g == 1 {
        let n = a as i128 * d as i128 + c as i128 * b as i128;
        return small_or_big(n, b as i128 * d as i128);
    }
    let (b1, d1) = (b / g, d / g);
    let t = a as i128 * d1 as i128 + c as i128 * b1 as i128;
    let g2 = gcd_u64((t.unsigned_abs() % g as u128) as u64, g as u64) as i128;
    small_or_big(t / g2, b1 as i128 * (d as i128 / g2))
}

/// `(a/b)(c/d)` for reduced operands with positive denominators.
fn mul_i64(a: i64, b: i64, c: i64, d: i64) -> Rational {
    let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i64;
    let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i64;
    let n = (a / g1) as i128 * (c / g2) as i128;
    let den = (b / g2) as i128 * (d / g1) as i128;
    small_or_big(n, den)
}

/// Wraps an already reduced pair with `den > 0`.
fn small_or_big(num: i128, den: i128) -> Rational {
    if fits(num.unsigned_abs()) && fits(den as u128) {
        Rational(Repr::Small { num, den })
    } else {
        Rational(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
    }
}

impl Rational {
    /// Builds `num/den`. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128_pair(num as i128, den as i128)
    }

    pub fn from_integer(v: i64) -> Rational {
        Rational(Repr::Small { num: v as i128, den: 1 })
    }

    pub fn zero() -> Rational {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Rational {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    fn from_i128_pair(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let (mut n, mut d) = (num, den);
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => {
                    return Rational::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
                }
            }
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128);
        let (n, d) = if g > 1 { (n / g as i128, d / g as i128) } else { (n, d) };
        if fits(n.unsigned_abs()) && fits(d as u128) {
            Rational(Repr::Small { num: n, den: d })
        } else {
            Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    /// Wraps a big rational, demoting to the small form when it fits.
    pub fn from_big(v: BigRational) -> Rational {
        let (n, d) = (v.numer(), v.denom());
        if let (Some(ni), Some(di)) = (n.to_i128(), d.to_i128()) {
            if fits(ni.unsigned_abs()) && fits(di.unsigned_abs()) {
                return Rational(Repr::Small { num: ni, den: di });
            }
        }
        Rational(Repr::Big(v))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => match b.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `max(self, 0)`.
    pub fn positive_part(&self) -> Rational {
        if self.is_negative() {
            Rational::zero()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Rational::from_i128_pair(*den, *num),
            Repr::Big(b) => Rational::from_big(b.recip()),
        }
    }

    /// Integer power (negative exponents take the reciprocal).
    pub fn pow(&self, exp: i32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * self;
        }
        if exp < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn min_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if b < a {
            b
        } else {
            a
        }
    }

    pub fn max_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if b > a {
            b
        } else {
            a
        }
    }

    /// Returns `true` when both endpoints of `[0, 1]` bracket the value.
    pub fn is_probability(&self) -> bool {
        !self.is_negative() && *self <= Rational::one()
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if let (Some(a), Some(b), Some(c), Some(d)) = (as_i64(*a), as_i64(*b), as_i64(*c), as_i64(*d)) {
                return add_i64(a, b, c, d);
            }
            if *b == *d {
                if let Some(n) = a.checked_add(*c) {
                    return Rational::from_i128_pair(n, *b);
                }
            } else {
                let g = gcd_u128(*b as u128, *d as u128) as i128;
                let (b1, d1) = (b / g, d / g);
                let n = a
                    .checked_mul(d1)
                    .and_then(|x| c.checked_mul(b1).and_then(|y| x.checked_add(y)));
                if let (Some(n), Some(den)) = (n, b1.checked_mul(*d)) {
                    return Rational::from_i128_pair(n, den);
                }
            }
        }
        Rational::from_big(self.to_big() + rhs.to_big())
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if *a == 0 || *c == 0 {
                return Rational::zero();
            }
            if let (Some(a), Some(b), Some(c), Some(d)) = (as_i64(*a), as_i64(*b), as_i64(*c), as_i64(*d)) {
                return mul_i64(a, b, c, d);
            }
            let g1 = gcd_u128(a.unsigned_abs(), *d as u128) as i128;
            let g2 = gcd_u128(c.unsigned_abs(), *b as u128) as i128;
            let n = (a / g1).checked_mul(c / g2);
            let den = (b / g2).checked_mul(d / g1);
            if let (Some(n), Some(den)) = (n, den) {
                if fits(n.unsigned_abs()) && fits(den as u128) {
                    return Rational(Repr::Small { num: n, den });
                }
            }
        }
        Rational::from_big(self.to_big() * rhs.to_big())
    }

    fn div_ref(&self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.mul_ref(&rhs.recip())
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Rational(Repr::Big(-b.clone())),
        }
    }

    /// Parses `p/q`, an integer, or an exact decimal such as `-0.125` or `2.5e-3`.
    pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p.trim()).ok_or_else(|| ParseRationalError::Malformed(s.into()))?;
            let q = parse_int(q.trim()).ok_or_else(|| ParseRationalError::Malformed(s.into()))?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.into()));
            }
            return Ok(Rational::from_big(BigRational::new(p, q)));
        }
        parse_decimal(s)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Result<Rational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(s.into());
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e = &s[pos + 1..];
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let exp: i64 = e
                .parse()
                .map_err(|_| ParseRationalError::Exponent(s.into()))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() { "0".to_string() } else { digits };
    let mut num = BigInt::from_str(&digits).map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    // Limits work done on adversarial exponents.
    if scale.unsigned_abs() > 4096 {
        return Err(ParseRationalError::Exponent(s.into()));
    }
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(Rational::from_big(value))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse(s)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from_integer(v as i64)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_i128_pair(v as i128, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational::from_big(v)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if b == d {
                return a.cmp(c);
            }
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } if *den == 1 => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident, $atr:ident, $amethod:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$imp(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $atr<&Rational> for Rational {
            fn $amethod(&mut self, rhs: &Rational) {
                *self = (&*self).$imp(rhs);
            }
        }
        impl $atr<Rational> for Rational {
            fn $amethod(&mut self, rhs: Rational) {
                *self = (&*self).$imp(&rhs);
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, rhs: &Rational) -> Rational {
        self.add_ref(&rhs.neg_ref())
    }
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, v| acc * v)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, v| acc * v)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

/// Serialized as a `"p/q"` string so nothing is lost at the boundary.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts `"p/q"` / decimal strings and JSON numbers (converted exactly
/// from their literal text).
impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl<'de> Visitor<'de> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\", a decimal string, or a JSON number")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                Rational::parse(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_i128_pair(v as i128, 1))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
                // Only reached without arbitrary-precision numbers; the shortest
                // round-trip text is the literal the caller wrote.
                if !v.is_finite() {
                    return Err(E::custom("non-finite number"));
                }
                Rational::parse(&format!("{v:?}")).map_err(E::custom)
            }

            fn visit_map<A: de::MapAccess<'de>>(self, map: A) -> Result<Rational, A::Error> {
                // serde_json's arbitrary_precision numbers arrive as a one-entry map.
                let number = serde_json::Number::deserialize(de::value::MapAccessDeserializer::new(map))?;
                Rational::parse(&number.to_string()).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
