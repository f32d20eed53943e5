//! Exact rational objective values.
//!
//! Every objective value, marginal gain and validator inequality is decided on exact
//! rationals, so ties in the greedy scan and equalities in the validators never depend
//! on floating-point rounding. Arithmetic is overflow-checked and panics rather than
//! wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational number in canonical reduced form with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Value(Ratio<i128>);

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reducing to lowest terms. Returns `None` for a zero denominator.
    pub fn new(numer: i128, denom: i128) -> Option<Value> {
        if denom == 0 {
            return None;
        }
        Some(Value(Ratio::new(numer, denom)))
    }

    pub fn from_int(v: i128) -> Value {
        Value(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Value {
        Value(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Value) -> Option<Value> {
        if other.is_zero() {
            return None;
        }
        self.0.checked_div(&other.0).map(Value)
    }

    pub fn max(self, other: Value) -> Value {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::from_int(v as i128)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::from_int(v as i128)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(
            self.0
                .checked_add(&rhs.0)
                .expect("rational overflow in addition"),
        )
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(
            self.0
                .checked_sub(&rhs.0)
                .expect("rational overflow in subtraction"),
        )
    }
}

impl Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        Value(
            self.0
                .checked_mul(&rhs.0)
                .expect("rational overflow in multiplication"),
        )
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-self.0)
    }
}

impl AddAssign for Value {
    fn add_assign(&mut self, rhs: Value) {
        *self = *self + rhs;
    }
}

impl SubAssign for Value {
    fn sub_assign(&mut self, rhs: Value) {
        *self = *self - rhs;
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::ZERO, |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        iter.fold(Value::ZERO, |acc, v| acc + *v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`: expected an integer or `num/den`")]
pub struct ParseValueError(pub String);

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseValueError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<i128>().map(Value::from_int).map_err(|_| err()),
            Some((n, d)) => {
                let n = n.trim().parse::<i128>().map_err(|_| err())?;
                let d = d.trim().parse::<i128>().map_err(|_| err())?;
                Value::new(n, d).ok_or_else(err)
            }
        }
    }
}

// Integers serialize as JSON numbers, everything else as a "num/den" string.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.denom() == 1 {
            if let Ok(v) = i64::try_from(self.numer()) {
                return serializer.serialize_i64(v);
            }
        }
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ValueVisitor;

        impl Visitor<'_> for ValueVisitor {
            type Value = Value;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::from_int(v as i128))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                Err(E::custom(format!(
                    "decimal {v} is not allowed; write exact values as \"num/den\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ValueVisitor)
    }
}

impl PartialEq<i64> for Value {
    fn eq(&self, other: &i64) -> bool {
        *self == Value::from(*other)
    }
}

impl PartialOrd<i64> for Value {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Value::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!("7/2".parse::<Value>().unwrap(), Value::new(7, 2).unwrap());
        assert_eq!("-4/6".parse::<Value>().unwrap(), Value::new(-2, 3).unwrap());
        assert_eq!("12".parse::<Value>().unwrap(), Value::from(12));
        assert!("1/0".parse::<Value>().is_err());
        assert!("1.5".parse::<Value>().is_err());
    }

    #[test]
    fn canonical_form() {
        let v = Value::new(6, -4).unwrap();
        assert_eq!(v.numer(), -3);
        assert_eq!(v.denom(), 2);
        assert_eq!(v.to_string(), "-3/2");
    }

    #[test]
    fn json_forms() {
        let v: Value = serde_json::from_str("\"7/2\"").unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"7/2\"");
        let w: Value = serde_json::from_str("5").unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "5");
        assert!(serde_json::from_str::<Value>("2.5").is_err());
    }

    proptest! {
        #[test]
        fn add_then_sub_is_exact(an in -10_000i128..10_000, ad in 1i128..500,
                                 bn in -10_000i128..10_000, bd in 1i128..500) {
            let a = Value::new(an, ad).unwrap();
            let b = Value::new(bn, bd).unwrap();
            prop_assert_eq!((a + b) - b, a);
        }
    }
}
