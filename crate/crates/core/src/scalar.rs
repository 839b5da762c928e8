//! Exact scalars: rationals and elements of a real quadratic field Q(sqrt d).
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with `a`, `b` reduced rationals and `d` a
//! square-free integer greater than one. Pure rationals carry `d = 0` and
//! `b = 0`, so equality is structural on the canonical form and a rational
//! embeds into every quadratic field without conversion.
//!
//! Arithmetic between two irrational scalars from different fields is a
//! programming error and panics; file parsing and the catalog guarantee one
//! field per instance.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    rational: BigRational,
    surd: BigRational,
    // 0 when `surd` is zero, otherwise the square-free radicand.
    radicand: u32,
}

/// Returns true when `d > 1` and no square of a prime divides `d`.
pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            rational: q,
            surd: BigRational::zero(),
            radicand: 0,
        }
    }

    /// `a + b*sqrt(d)`; `d` must be square-free and greater than one.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::Field(format!("{d} is not a square-free integer > 1")));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: u32) -> Result<Self> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(rational: BigRational, surd: BigRational, radicand: u32) -> Self {
        if surd.is_zero() {
            Self::from_rational(rational)
        } else {
            Self {
                rational,
                surd,
                radicand,
            }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// The radicand `d` when the scalar is irrational.
    pub fn radicand(&self) -> Option<u32> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.surd.is_zero() && self.rational.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// The rational value, if the scalar has no irrational part.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::normalized(self.rational.clone(), -self.surd.clone(), self.radicand)
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - d * &self.surd * &self.surd
    }

    /// Sign of the real number `a + b*sqrt(d)`.
    pub fn signum(&self) -> Ordering {
        let sa = self.rational.cmp(&BigRational::zero());
        let sb = self.surd.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a^2 with d*b^2
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let a2 = &self.rational * &self.rational;
        let b2 = d * &self.surd * &self.surd;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.rational.recip()));
        }
        let n = self.norm();
        Some(Self::normalized(
            &self.rational / &n,
            -(&self.surd / &n),
            self.radicand,
        ))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    fn common_radicand(&self, other: &Self) -> u32 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("scalars from different quadratic fields: sqrt({d}) and sqrt({e})"),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let d = self.common_radicand(rhs);
        Scalar::normalized(&self.rational + &rhs.rational, &self.surd + &rhs.surd, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        let d = self.common_radicand(rhs);
        Scalar::normalized(&self.rational - &rhs.rational, &self.surd - &rhs.surd, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_rational() && rhs.is_rational() {
            return Scalar::from_rational(&self.rational * &rhs.rational);
        }
        let d = self.common_radicand(rhs);
        let dq = BigRational::from_integer(BigInt::from(d));
        let a = &self.rational * &rhs.rational + dq * &self.surd * &rhs.surd;
        let b = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Scalar::normalized(a, b, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.rational.clone(), -self.surd.clone(), self.radicand)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text: `p`, `p/q`, `r/s*sqrt(d)` or `p/q+r/s*sqrt(d)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        let d = self.radicand;
        let surd = |c: &BigRational| {
            if c.is_one() {
                format!("sqrt({d})")
            } else {
                format!("{}*sqrt({d})", fmt_rational(c))
            }
        };
        if self.rational.is_zero() {
            return match self.surd.is_negative() {
                true => write!(f, "-{}", surd(&-&self.surd)),
                false => f.write_str(&surd(&self.surd)),
            };
        }
        let sign = if self.surd.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{}", fmt_rational(&self.rational), surd(&self.surd.abs()))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_sqrt(s: &str) -> Option<u32> {
    let inner = s.trim().strip_prefix("sqrt(")?.strip_suffix(')')?;
    inner.trim().parse().ok()
}

// One signed term: `q`, `q*sqrt(d)` or `sqrt(d)`.
fn parse_term(term: &str, negative: bool) -> std::result::Result<Scalar, String> {
    let term = term.trim();
    let bad = || format!("malformed scalar term `{term}`");
    let value = if let Some(d) = parse_sqrt(term) {
        Scalar::sqrt_of(d).map_err(|e| e.to_string())?
    } else if let Some((coef, root)) = term.split_once('*') {
        let q = parse_rational(coef).ok_or_else(bad)?;
        let d = parse_sqrt(root).ok_or_else(bad)?;
        Scalar::quadratic(BigRational::zero(), q, d).map_err(|e| e.to_string())?
    } else {
        Scalar::from_rational(parse_rational(term).ok_or_else(bad)?)
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty scalar".into());
        }
        // split on + / - that do not start the string or follow a '/'
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let mut i = 0;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        while i < bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'/' {
                terms.push((&s[start..i], negative));
                negative = c == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((&s[start..], negative));
        let mut total = Scalar::zero();
        let mut field: Option<u32> = None;
        for (term, neg) in terms {
            let value = parse_term(term, neg)?;
            if let Some(d) = value.radicand() {
                if field.is_some_and(|f| f != d) {
                    return Err(format!("mixed radicands in `{s}`"));
                }
                field = Some(d);
            }
            total += value;
        }
        Ok(total)
    }
}

/// Convenience constructor for tests and tables: `q(1, 2)` is one half.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::from_ratio(num, den)
}
