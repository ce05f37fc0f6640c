//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! Every coefficient that shows up in the spinor representation, the nice
//! 3-form and the catalog cocycles lives in this field, so the whole crate
//! works with [`ExactScalar`] and never touches floating point for decisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("component {0} does not fit the JSON integer range")]
    Overflow(String),
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_rational(q: &BigRational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Arithmetic operation selector for [`ExactScalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element `rat + sqrt2·√2` of ℚ(√2).
///
/// `BigRational` keeps both parts reduced with a positive denominator, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    rat: BigRational,
    sqrt2: BigRational,
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl ExactScalar {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        ExactScalar { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        ExactScalar::new(BigRational::zero(), BigRational::one())
    }

    /// The element 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        ExactScalar::new(BigRational::zero(), ratio(1, 2))
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `p/q`; panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        ExactScalar::new(ratio(p, q), BigRational::zero())
    }

    /// `p/q + (r/s)·√2`; panics if a denominator is zero.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        ExactScalar::new(ratio(p, q), ratio(r, s))
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.sqrt2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Galois conjugate `rat − sqrt2·√2`.
    pub fn conj(&self) -> Self {
        ExactScalar::new(self.rat.clone(), -self.sqrt2.clone())
    }

    /// Field norm `rat² − 2·sqrt2²`, the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // The norm of a nonzero element is nonzero because √2 is irrational.
        let n = self.norm();
        Ok(ExactScalar::new(&self.rat / &n, -(&self.sqrt2 / &n)))
    }

    pub fn try_div(&self, rhs: &ExactScalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn arith(a: &ExactScalar, b: &ExactScalar, op: ArithOp) -> Result<Self, ScalarError> {
        match op {
            ArithOp::Add => Ok(a + b),
            ArithOp::Sub => Ok(a - b),
            ArithOp::Mul => Ok(a * b),
            ArithOp::Div => a.try_div(b),
        }
    }

    /// Exact sign of the real number `r + s√2`.
    ///
    /// When `r` and `s` have opposite signs the answer follows the larger of
    /// `r²` and `2s²`; the two can't be equal unless both vanish.
    pub fn sign(&self) -> Sign {
        let sr = Sign::of_rational(&self.rat);
        let ss = Sign::of_rational(&self.sqrt2);
        match (sr, ss) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let r2 = &self.rat * &self.rat;
                let s2 = BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2;
                if r2 > s2 {
                    a
                } else {
                    b
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let s = self.sqrt2.to_f64().unwrap_or(f64::NAN);
        r + s * std::f64::consts::SQRT_2
    }

    fn json_pair(q: &BigRational) -> Result<[i64; 2], ScalarError> {
        let n = q.numer().to_i64().ok_or_else(|| ScalarError::Overflow(q.to_string()))?;
        let d = q.denom().to_i64().ok_or_else(|| ScalarError::Overflow(q.to_string()))?;
        Ok([n, d])
    }

    /// JSON encoding `[[p,q],[r,s]]` for `p/q + (r/s)√2`.
    pub fn to_json_parts(&self) -> Result<[[i64; 2]; 2], ScalarError> {
        Ok([Self::json_pair(&self.rat)?, Self::json_pair(&self.sqrt2)?])
    }

    pub fn from_json_parts(parts: [[i64; 2]; 2]) -> Result<Self, ScalarError> {
        let [[p, q], [r, s]] = parts;
        if q <= 0 || s <= 0 {
            return Err(ScalarError::Parse(format!("{parts:?}: denominators must be positive")));
        }
        Ok(ExactScalar::from_parts(p, q, r, s))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar::new(q, BigRational::zero())
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.rat + &rhs.rat, &self.sqrt2 + &rhs.sqrt2)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.rat - &rhs.rat, &self.sqrt2 - &rhs.sqrt2)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        if self.is_rational() && rhs.is_rational() {
            return ExactScalar::new(&self.rat * &rhs.rat, BigRational::zero());
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let rat = &self.rat * &rhs.rat + two * &self.sqrt2 * &rhs.sqrt2;
        let sqrt2 = &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat;
        ExactScalar::new(rat, sqrt2)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.rat += &rhs.rat;
        self.sqrt2 += &rhs.sqrt2;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.rat -= &rhs.rat;
        self.sqrt2 -= &rhs.sqrt2;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.rat, -self.sqrt2)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.rat.clone(), -self.sqrt2.clone())
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt2", self.sqrt2),
            (false, false) => {
                if self.sqrt2.is_negative() {
                    write!(f, "{}-{}*sqrt2", self.rat, -self.sqrt2.clone())
                } else {
                    write!(f, "{}+{}*sqrt2", self.rat, self.sqrt2)
                }
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parses one signed term: a rational, `sqrt2`, or `<rational>*sqrt2`.
fn parse_term(term: &str) -> Option<(BigRational, bool)> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let body = body.trim();
    let (value, irrational) = if body == "sqrt2" {
        (BigRational::one(), true)
    } else if let Some(coef) = body.strip_suffix("*sqrt2") {
        (parse_rational(coef)?, true)
    } else {
        (parse_rational(body)?, false)
    };
    Some((if neg { -value } else { value }, irrational))
}

impl FromStr for ExactScalar {
    type Err = ScalarError;

    /// Accepts `p/q`, `p/q+r/s*sqrt2`, `r/s*sqrt2`, `sqrt2`, with optional signs.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // Split at a sign that is not the leading one.
        let split = compact
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i);
        let terms: Vec<&str> = match split {
            Some(i) => vec![&compact[..i], &compact[i..]],
            None => vec![&compact[..]],
        };
        let mut out = ExactScalar::zero();
        let mut seen = (false, false);
        for t in terms {
            let (value, irrational) = parse_term(t).ok_or_else(err)?;
            if irrational {
                if seen.1 {
                    return Err(err());
                }
                seen.1 = true;
                out.sqrt2 = value;
            } else {
                if seen.0 {
                    return Err(err());
                }
                seen.0 = true;
                out.rat = value;
            }
        }
        Ok(out)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let parts = self.to_json_parts().map_err(serde::ser::Error::custom)?;
        parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = <[[i64; 2]; 2]>::deserialize(deserializer)?;
        ExactScalar::from_json_parts(parts).map_err(D::Error::custom)
    }
}
