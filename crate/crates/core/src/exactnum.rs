//! Exact numbers of the form `q0 + q1*sqrt(k1) + q2*sqrt(k2) + ...` with rational
//! coefficients and distinct square-free radicands.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Element of the multi-quadratic ring over the rationals.
///
/// The term map is always canonical: keys are square-free, values nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QNum {
    terms: BTreeMap<u64, BigRational>,
}

/// Splits `k` as `s^2 * core` with `core` square-free.
pub fn square_free_split(mut k: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= k {
        let pp = p * p;
        while k.is_multiple_of(pp) {
            k /= pp;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, k)
}

fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push(k);
    }
    out
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QNum {
    pub fn zero() -> Self {
        QNum::default()
    }

    pub fn one() -> Self {
        QNum::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QNum::from_rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut q = QNum::zero();
        q.add_term(1, r);
        q
    }

    /// `coef * sqrt(k)` with `k` reduced to square-free form. Panics on `k == 0`
    /// only through a zero result, which is legal.
    pub fn term(coef: BigRational, k: u64) -> Self {
        let mut q = QNum::zero();
        if k == 0 {
            return q;
        }
        let (s, core) = square_free_split(k);
        q.add_term(core, coef * BigRational::from_integer(BigInt::from(s)));
        q
    }

    pub fn sqrt(k: u64) -> Self {
        QNum::term(BigRational::one(), k)
    }

    /// Square root of a nonnegative rational, if it lands in the ring.
    pub fn sqrt_rational(r: &BigRational) -> Option<QNum> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(QNum::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = (r.numer() * r.denom()).to_biguint()?;
        let (s, core) = big_square_free_split(&pq)?;
        let coef = BigRational::new(BigInt::from(s), r.denom().clone());
        Some(QNum::term(coef, core))
    }

    fn add_term(&mut self, k: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, k: u64) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&k| k == 1)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coefficient(1))
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_integer())
    }

    /// LCM of all coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// If the value is `q * sqrt(k)` for a single radicand, returns `(q, k)`.
    pub fn single_radical(&self) -> Option<(BigRational, u64)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    fn primes(&self) -> BTreeSet<u64> {
        self.terms
            .keys()
            .flat_map(|&k| prime_factors(k))
            .collect()
    }

    /// Galois conjugate flipping the sign of sqrt(p).
    pub fn conjugate(&self, p: u64) -> QNum {
        let mut out = self.clone();
        for (k, c) in out.terms.iter_mut() {
            if k % p == 0 {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn inv(&self) -> Result<QNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = QNum::one();
        let mut den = self.clone();
        for p in self.primes() {
            let c = den.conjugate(p);
            num = &num * &c;
            den = &den * &c;
        }
        let r = den
            .to_rational()
            .expect("conjugate product is rational");
        Ok(num.scale(&(BigRational::one() / r)))
    }

    pub fn scale(&self, r: &BigRational) -> QNum {
        if r.is_zero() {
            return QNum::zero();
        }
        QNum {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn checked_div(&self, other: &QNum) -> Result<QNum> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> QNum {
        self * self
    }

    /// Rigorous enclosure `[lo, hi]` using `bits` of precision per radical.
    pub fn enclose(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let scale = BigInt::one() << bits;
        for (&k, c) in &self.terms {
            if k == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let r = (BigUint::from(k) << (2 * bits)).sqrt();
            let r = BigInt::from(r);
            let s_lo = BigRational::new(r.clone(), scale.clone());
            let s_hi = BigRational::new(r + 1, scale.clone());
            if c.is_positive() {
                lo += c * &s_lo;
                hi += c * &s_hi;
            } else {
                lo += c * &s_hi;
                hi += c * &s_lo;
            }
        }
        (lo, hi)
    }

    fn quick_sign(&self) -> Option<Sign> {
        let mut sum = 0.0f64;
        let mut mag = 0.0f64;
        for (&k, c) in &self.terms {
            let cf = c.to_f64()?;
            if !cf.is_finite() || (cf == 0.0) {
                return None;
            }
            let t = cf * (k as f64).sqrt();
            sum += t;
            mag += t.abs();
        }
        let err = mag * 1e-12 + f64::MIN_POSITIVE;
        if sum > err {
            Some(Sign::Positive)
        } else if sum < -err {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn sign(&self) -> Sign {
        if self.terms.is_empty() {
            return Sign::Zero;
        }
        if self.is_rational() {
            return if self.coefficient(1).is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        if let Some(s) = self.quick_sign() {
            return s;
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn abs(&self) -> QNum {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Approximation within `2^-precision` of the true value (subject to f64 rounding).
    pub fn to_float(&self, precision: u32) -> f64 {
        if let Some(r) = self.to_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let (lo, hi) = self.enclose(precision + 2);
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(64)
    }

    pub fn parse(text: &str) -> Result<QNum> {
        Parser::new(text).expr()
    }
}

fn big_square_free_split(n: &BigUint) -> Option<(BigUint, u64)> {
    let (s, core) = square_free_split(n.to_u64()?);
    Some((BigUint::from(s), core))
}

impl fmt::Display for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if k == 1 {
                a.to_string()
            } else if a.is_one() {
                if i == 0 && neg {
                    format!("1*sqrt({})", k)
                } else {
                    format!("sqrt({})", k)
                }
            } else {
                format!("{}*sqrt({})", a, k)
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QNum({})", self)
    }
}

impl FromStr for QNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<QNum> {
        QNum::parse(s)
    }
}

impl Serialize for QNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        QNum::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for QNum {
    fn from(n: i64) -> Self {
        QNum::from_int(n)
    }
}

impl From<BigRational> for QNum {
    fn from(r: BigRational) -> Self {
        QNum::from_rational(r)
    }
}

impl PartialOrd for QNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

fn add_ref(a: &QNum, b: &QNum) -> QNum {
    let mut out = a.clone();
    for (&k, c) in &b.terms {
        out.add_term(k, c.clone());
    }
    out
}

fn mul_ref(a: &QNum, b: &QNum) -> QNum {
    let mut out = QNum::zero();
    for (&ka, ca) in &a.terms {
        for (&kb, cb) in &b.terms {
            let g = ka.gcd(&kb);
            let k = (ka / g)
                .checked_mul(kb / g)
                .expect("radicand overflow");
            let mut c = ca * cb;
            if g != 1 {
                c *= BigRational::from_integer(BigInt::from(g));
            }
            out.add_term(k, c);
        }
    }
    out
}

fn neg_ref(a: &QNum) -> QNum {
    QNum {
        terms: a.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&QNum> for &QNum {
            type Output = QNum;
            fn $m(self, o: &QNum) -> QNum {
                $f(self, o)
            }
        }
        impl $tr<QNum> for QNum {
            type Output = QNum;
            fn $m(self, o: QNum) -> QNum {
                $f(&self, &o)
            }
        }
        impl $tr<&QNum> for QNum {
            type Output = QNum;
            fn $m(self, o: &QNum) -> QNum {
                $f(&self, o)
            }
        }
        impl $tr<QNum> for &QNum {
            type Output = QNum;
            fn $m(self, o: QNum) -> QNum {
                $f(self, &o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, |a: &QNum, b: &QNum| add_ref(a, &neg_ref(b)));
binop!(Mul, mul, mul_ref);
binop!(Div, div, |a: &QNum, b: &QNum| a
    .checked_div(b)
    .expect("QNum division by zero"));

impl Neg for QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        neg_ref(&self)
    }
}

impl Neg for &QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        neg_ref(self)
    }
}

impl AddAssign<&QNum> for QNum {
    fn add_assign(&mut self, o: &QNum) {
        for (&k, c) in &o.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl AddAssign for QNum {
    fn add_assign(&mut self, o: QNum) {
        *self += &o;
    }
}

impl SubAssign<&QNum> for QNum {
    fn sub_assign(&mut self, o: &QNum) {
        for (&k, c) in &o.terms {
            self.add_term(k, -c.clone());
        }
    }
}

impl MulAssign<&QNum> for QNum {
    fn mul_assign(&mut self, o: &QNum) {
        *self = mul_ref(self, o);
    }
}

impl std::iter::Sum for QNum {
    fn sum<I: Iterator<Item = QNum>>(it: I) -> QNum {
        let mut acc = QNum::zero();
        for x in it {
            acc += &x;
        }
        acc
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), i: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.i,
            msg: msg.to_string(),
        })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected unsigned integer");
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn sqrt_call(&mut self) -> Result<u64> {
        self.ws();
        if !self.s[self.i..].starts_with(b"sqrt") {
            return self.err("expected 'sqrt('");
        }
        self.i += 4;
        if !self.eat(b'(') {
            return self.err("expected '('");
        }
        let pos = self.i;
        let k = self.uint()?;
        if k.is_zero() {
            self.i = pos;
            return self.err("radicand 0");
        }
        let k = match k.to_u64() {
            Some(k) => k,
            None => return self.err("radicand too large"),
        };
        if !self.eat(b')') {
            return self.err("expected ')'");
        }
        Ok(k)
    }

    fn term(&mut self) -> Result<QNum> {
        let neg = self.eat(b'-');
        self.ws();
        let sgn = if neg { -BigRational::one() } else { BigRational::one() };
        if self.s[self.i..].starts_with(b"sqrt") {
            let k = self.sqrt_call()?;
            return Ok(QNum::term(sgn, k));
        }
        let num = self.uint()?;
        let mut r = BigRational::from_integer(num);
        if self.eat(b'/') {
            let pos = self.i;
            let d = self.uint()?;
            if d.is_zero() {
                self.i = pos;
                return self.err("zero denominator");
            }
            r /= BigRational::from_integer(d);
        }
        r *= sgn;
        if self.eat(b'*') {
            let k = self.sqrt_call()?;
            return Ok(QNum::term(r, k));
        }
        Ok(QNum::from_rational(r))
    }

    fn expr(&mut self) -> Result<QNum> {
        let mut acc = self.term()?;
        loop {
            self.ws();
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.i += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc -= &self.term()?;
                }
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
    }
}

/// Shorthand used across the crate and tests.
pub fn q(text: &str) -> QNum {
    QNum::parse(text).unwrap_or_else(|e| panic!("bad literal {:?}: {}", text, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(q("3/2"), QNum::from_ratio(3, 2));
        let x = q("1/2*sqrt(2)+1/2*sqrt(6)");
        assert_eq!(x.coefficient(2), rat(1, 2));
        assert_eq!(x.coefficient(6), rat(1, 2));
        assert_eq!(q("sqrt(12)"), QNum::term(rat(2, 1), 3));
        assert_eq!(q(" - 3 / 4 * sqrt( 8 ) + 1 "), q("1-3/2*sqrt(2)"));
        assert_eq!(q("sqrt(1)"), QNum::one());
        assert_eq!(q("-sqrt(2)"), -QNum::sqrt(2));
    }

    #[test]
    fn parse_errors() {
        match QNum::parse("1/0") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("zero denominator")),
            e => panic!("{:?}", e),
        }
        match QNum::parse("sqrt(0)") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("radicand 0")),
            e => panic!("{:?}", e),
        }
        match QNum::parse("1+*2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            e => panic!("{:?}", e),
        }
        assert!(QNum::parse("").is_err());
        assert!(QNum::parse("2 3").is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(q("sqrt(6)+0*sqrt(2)+1/2").to_string(), "1/2+sqrt(6)");
        assert_eq!((-QNum::sqrt(3)).to_string(), "-1*sqrt(3)");
        assert_eq!(q("1-sqrt(3)").to_string(), "1-sqrt(3)");
        assert_eq!(q("-2/3*sqrt(5)+sqrt(2)").to_string(), "sqrt(2)-2/3*sqrt(5)");
        assert_eq!(QNum::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let s2 = QNum::sqrt(2);
        assert_eq!(&s2 * &s2, QNum::from_int(2));
        assert_eq!(QNum::sqrt(2) * QNum::sqrt(6), QNum::term(rat(2, 1), 3));
        assert_eq!(q("1/2*sqrt(2)+1/2*sqrt(6)") + q("1/2*sqrt(2)-1/2*sqrt(6)"), s2);
    }

    #[test]
    fn inverses() {
        assert_eq!(QNum::sqrt(2).inv().unwrap(), q("1/2*sqrt(2)"));
        assert_eq!(q("1+sqrt(2)").inv().unwrap(), q("-1+sqrt(2)"));
        assert_eq!(QNum::from_int(2).inv().unwrap(), QNum::from_ratio(1, 2));
        assert_eq!(QNum::zero().inv(), Err(Error::DivisionByZero));
        let x = q("1+sqrt(2)-sqrt(3)+2*sqrt(5)");
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn signs() {
        assert_eq!(QNum::zero().sign(), Sign::Zero);
        assert_eq!(q("sqrt(2)-1").sign(), Sign::Positive);
        assert_eq!(q("3*sqrt(2)-2*sqrt(3)+sqrt(6)-5").sign(), Sign::Negative);
        // a convergent of sqrt(2) defeats the f64 fast path
        let a = q("sqrt(2)");
        let b = q("665857/470832");
        assert_eq!((&a - &b).sign(), Sign::Negative);
        assert_eq!((&b - &a).sign(), Sign::Positive);
    }

    #[test]
    fn floats() {
        assert!(q("5/3").is_rational());
        assert!(!QNum::sqrt(17).is_rational());
        let v = q("1/2*sqrt(2)+1/2*sqrt(6)").to_float(50);
        assert!((v - 1.9318516525781366).abs() < 1e-14);
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_split(12), (2, 3));
        assert_eq!(square_free_split(72), (6, 2));
        assert_eq!(square_free_split(17), (1, 17));
        assert_eq!(
            QNum::sqrt_rational(&rat(17, 2)).unwrap(),
            q("1/2*sqrt(34)")
        );
        assert_eq!(QNum::sqrt_rational(&rat(9, 4)).unwrap(), QNum::from_ratio(3, 2));
        assert!(QNum::sqrt_rational(&rat(-1, 1)).is_none());
    }

    #[test]
    fn rescaling_helpers() {
        assert_eq!(q("3/4*sqrt(2)+1/6").denominator(), BigInt::from(12));
        assert_eq!(q("3*sqrt(2)").single_radical(), Some((rat(3, 1), 2)));
        assert_eq!(q("1+sqrt(3)").conjugate(3), q("1-sqrt(3)"));
    }
}
