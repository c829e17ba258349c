//! Exact rational arithmetic and the integer helpers everything else sits on.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator, so equality, ordering and
//! hashing are plain value comparisons. Nothing in this crate touches
//! floating point; decimal strings are produced only for display.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Significant digits used when a decimal approximation is rendered.
pub const DEFAULT_PRECISION: usize = 12;

/// An exact fraction in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den` in lowest terms.
    ///
    /// Panics if `den` is zero; use [`Rational::try_new`] for untrusted input.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn try_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        self.0.numer().div_ceil(self.0.denom())
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        self - &Rational::from_integer(self.floor())
    }

    /// The integer closest to `self`; halves go to the smaller neighbour.
    pub fn nearest_integer(&self) -> BigInt {
        let shifted = self - &Rational::half();
        shifted.ceil()
    }

    /// Distance to the nearest integer, always in `[0, 1/2]`.
    pub fn nearest_int_distance(&self) -> Rational {
        let f = self.fract();
        let g = &Rational::one() - &f;
        if f <= g {
            f
        } else {
            g
        }
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `num/den`, always with the slash, as used in CSV cells.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Decimal rendering with `digits` significant digits, rounded half to
    /// even. Trailing zeros are dropped. For display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let num = self.numer().abs();
        let den = self.denom().clone();

        // exponent e with 10^e <= |v| < 10^(e+1)
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ten = BigInt::from(10);
        let scaled_cmp = |e: i64| -> std::cmp::Ordering {
            if e >= 0 {
                num.cmp(&(&den * pow10(e as u32)))
            } else {
                (&num * pow10((-e) as u32)).cmp(&den)
            }
        };
        if scaled_cmp(e) == std::cmp::Ordering::Less {
            e -= 1;
        }

        let shift = digits as i64 - 1 - e;
        let (n, d) = if shift >= 0 {
            (&num * pow10(shift as u32), den.clone())
        } else {
            (num.clone(), &den * pow10((-shift) as u32))
        };
        let (mut q, r) = n.div_rem(&d);
        let twice = &r * 2;
        if twice > d || (twice == d && q.is_odd()) {
            q += 1;
        }
        let mut shift = shift;
        if q == pow10(digits as u32) {
            q /= &ten;
            shift -= 1;
        }

        let mut text = q.to_string();
        if shift > 0 {
            let shift = shift as usize;
            if text.len() <= shift {
                text = format!("{}{}", "0".repeat(shift + 1 - text.len()), text);
            }
            let point = text.len() - shift;
            text.insert(point, '.');
            while text.ends_with('0') {
                text.pop();
            }
            if text.ends_with('.') {
                text.pop();
            }
        } else {
            text.push_str(&"0".repeat((-shift) as usize));
        }
        if negative {
            text.insert(0, '-');
        }
        text
    }
}

fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// Distance from `u` to the nearest integer.
pub fn nearest_int_distance(u: &Rational) -> Rational {
    u.nearest_int_distance()
}

/// Largest componentwise distance to the nearest integer.
pub fn angular_norm(v: &[Rational]) -> Result<Rational> {
    v.iter()
        .map(Rational::nearest_int_distance)
        .max()
        .ok_or_else(|| Error::InvalidInput("angular norm of an empty vector".into()))
}

/// Integers `(g, h)` with `a*g - b*h = 1`, taking the least positive `g`.
///
/// For `b = 1` this is `(1, a - 1)`.
pub fn bezout_coprime(a: i64, b: i64) -> Result<(i64, i64)> {
    if a <= 0 || b <= 0 {
        return Err(Error::InvalidInput(format!(
            "Bezout coefficients need positive inputs, got ({a}, {b})"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    if b == 1 {
        return Ok((1, a - 1));
    }
    let (a, b) = (a as i128, b as i128);
    let egcd = a.extended_gcd(&b);
    // egcd.x * a + egcd.y * b = 1
    let g = egcd.x.rem_euclid(b);
    let h = (a * g - 1) / b;
    Ok((g as i64, h as i64))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, `p`, and plain decimals such as `-0.125`; decimals are
    /// converted exactly.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Parse(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            return Rational::try_new(p, q).map_err(|_| bad());
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |d: &str| d.chars().all(|c| c.is_ascii_digit());
            if !all_digits(int_digits)
                || !all_digits(frac_part)
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut num: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| bad())?
            };
            if negative {
                num = -num;
            }
            return Ok(Rational::new(num, pow10(frac_part.len() as u32)));
        }
        let p: BigInt = text.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(p))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("Rational", 3)?;
        state.serialize_field("num", &self.numer().to_string())?;
        state.serialize_field("den", &self.denom().to_string())?;
        state.serialize_field("approx", &self.to_decimal(DEFAULT_PRECISION))?;
        state.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            num: String,
            den: String,
        }
        let wire = Wire::deserialize(deserializer)?;
        let num: BigInt = wire.num.parse().map_err(de::Error::custom)?;
        let den: BigInt = wire.den.parse().map_err(de::Error::custom)?;
        Rational::try_new(num, den).map_err(de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<&BigInt> for Rational {
    fn from(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<i64> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                $trait::$method(self, &Rational::from(rhs))
            }
        }
        impl $trait<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                $trait::$method(&self, &Rational::from(rhs))
            }
        }
        impl $trait<&Rational> for i64 {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(&Rational::from(self), rhs)
            }
        }
        impl $trait<Rational> for i64 {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(&Rational::from(self), &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn nearest_int_distance_examples() {
        assert_eq!(q("3/10").nearest_int_distance(), q("3/10"));
        assert_eq!(q("7/4").nearest_int_distance(), q("1/4"));
        assert_eq!(q("-1/2").nearest_int_distance(), q("1/2"));
        assert_eq!(q("-7/3").nearest_int_distance(), q("1/3"));
        assert_eq!(q("5").nearest_int_distance(), Rational::zero());
    }

    #[test]
    fn angular_norm_examples() {
        assert_eq!(angular_norm(&[q("0"), q("0"), q("0")]).unwrap(), q("0"));
        assert_eq!(angular_norm(&[q("3/10"), q("7/4")]).unwrap(), q("3/10"));
        assert_eq!(angular_norm(&[q("1/2"), q("1/3")]).unwrap(), q("1/2"));
        assert!(matches!(angular_norm(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_coprime(1, 2).unwrap(), (1, 0));
        assert_eq!(bezout_coprime(2, 3).unwrap(), (2, 1));
        assert_eq!(bezout_coprime(3, 5).unwrap(), (2, 1));
        assert_eq!(bezout_coprime(7, 1).unwrap(), (1, 6));
        assert_eq!(bezout_coprime(4, 6), Err(Error::NotCoprime { a: 4, b: 6 }));
        assert!(bezout_coprime(0, 3).is_err());
    }

    #[test]
    fn nearest_integer_ties_go_down() {
        assert_eq!(q("1/2").nearest_integer(), BigInt::from(0));
        assert_eq!(q("-1/2").nearest_integer(), BigInt::from(-1));
        assert_eq!(q("5/3").nearest_integer(), BigInt::from(2));
        assert_eq!(q("-5/3").nearest_integer(), BigInt::from(-2));
    }

    #[test]
    fn parsing() {
        assert_eq!(q("6/-8"), Rational::new(-3, 4));
        assert_eq!(q(" 42 "), Rational::from(42));
        assert_eq!(q("-0.125"), Rational::new(-1, 8));
        assert_eq!(q("2.50"), Rational::new(5, 2));
        assert_eq!(q(".5"), Rational::new(1, 2));
        assert_eq!(q("-3."), Rational::from(-3));
        for bad in ["", "1/0", "abc", "1.2.3", "1/2/3", ".", "-.", "1e5"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q("1/2").to_decimal(12), "0.5");
        assert_eq!(q("1/3").to_decimal(12), "0.333333333333");
        assert_eq!(q("2/3").to_decimal(12), "0.666666666667");
        assert_eq!(q("-51/302").to_decimal(6), "-0.168874");
        assert_eq!(q("123456").to_decimal(3), "123000");
        assert_eq!(q("1/800").to_decimal(4), "0.00125");
        assert_eq!(q("0").to_decimal(5), "0");
        // half to even
        assert_eq!(q("25/1000").to_decimal(1), "0.02");
        assert_eq!(q("35/1000").to_decimal(1), "0.04");
        assert_eq!(q("999/1000").to_decimal(2), "1");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(q("-51/302")).unwrap();
        assert_eq!(v["num"], "-51");
        assert_eq!(v["den"], "302");
        assert_eq!(v["approx"], "-0.168874172185");
        let back: Rational = serde_json::from_value(v).unwrap();
        assert_eq!(back, q("-51/302"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(q("4/2").to_fraction_string(), "2/1");
        assert_eq!(q("-3/9").to_string(), "-1/3");
    }
}
