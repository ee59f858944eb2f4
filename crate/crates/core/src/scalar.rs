//! Exact ground-field arithmetic.
//!
//! [`Scalar`] is a reduced fraction of arbitrary-precision integers. Every
//! operation is exact and the representation is canonical (gcd-reduced with a
//! positive denominator), so structural equality is field equality.
//!
//! The canonical text form is `p/q`, or just `p` when the denominator is one.
//! It is the wire form used by every JSON payload in this crate.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, rejecting a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Integer power. Negative exponents require a nonzero base.
    ///
    /// # Panics
    /// Panics if `self` is zero and `exp < 0`.
    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "zero raised to a negative power");
            return Scalar(self.0.recip()).pow(-exp);
        }
        let mut base = self.0.clone();
        let mut e = exp as u64;
        let mut acc = BigRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Scalar(acc)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `(-1)^k`.
    pub fn sign_pow(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }
}

/// Parses `[-]digits` or `[-]digits/digits` into canonical form.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => {
            if !digits(n) || !digits(d) {
                return Err(malformed());
            }
            (n, d)
        }
        None => {
            if !digits(body) {
                return Err(malformed());
            }
            (body, "1")
        }
    };
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let value = BigRational::new(if neg { -num } else { num }, den);
    Ok(Scalar(value))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor (same as the backing type); use
// `checked_div` where the divisor is data-dependent.
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign<Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
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

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// Shorthand for building test and example values.
///
/// # Panics
/// Panics on malformed text.
pub fn s(text: &str) -> Scalar {
    parse_scalar(text).unwrap_or_else(|e| panic!("bad scalar literal {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse_scalar("3/6").unwrap(), Scalar::ratio(1, 2).unwrap());
        assert_eq!(parse_scalar("0").unwrap(), Scalar::zero());
        assert_eq!(parse_scalar("-29/5").unwrap().to_string(), "-29/5");
        assert_eq!(parse_scalar("4/-2").unwrap_err(), Error::MalformedScalar("4/-2".into()));
        assert_eq!(parse_scalar("12/4").unwrap().to_string(), "3");
        assert_eq!(parse_scalar("-0").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "-", "1/", "/2", "1.5", "a", "1/2/3", "+1", " 1", "--1"] {
            assert!(matches!(parse_scalar(bad), Err(Error::MalformedScalar(_))), "{bad}");
        }
        assert_eq!(parse_scalar("7/0"), Err(Error::ZeroDenominator));
        assert_eq!(parse_scalar("-7/000"), Err(Error::ZeroDenominator));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::ratio(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn integer_powers() {
        let half = s("1/2");
        assert_eq!(half.pow(3), s("1/8"));
        assert_eq!(half.pow(-3), s("8"));
        assert_eq!(s("-2").pow(0), s("1"));
        assert_eq!(Scalar::sign_pow(-3), s("-1"));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x - &x, Scalar::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * x.inv().unwrap(), Scalar::one());
            }
            // equality is canonical
            prop_assert_eq!(x == y, (&x - &y).is_zero());
        }

        #[test]
        fn render_parse_round_trip(x in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
        }
    }
}
