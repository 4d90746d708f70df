//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], an ordered field with
//! exact arithmetic. The arbitrary-precision [`BigRational`](num_rational::BigRational)
//! is the default (see [`crate::Rat`]); the fixed-width `Ratio<i64>` and
//! `Ratio<i128>` also implement the trait and are handy for small inputs,
//! but they panic on overflow. Floating point types are deliberately not
//! scalars: every predicate in the crate relies on exact sign tests.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact ordered field.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// `num / den`, panics when `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;

    /// Parses `"p/q"` or `"p"`.
    fn parse(s: &str) -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;

    /// `self -= a * b`; the inner loop of every elimination.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);
}

macro_rules! impl_ratio_scalar {
    ($int:ty, $from:expr) => {
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer($from(n))
            }

            fn from_frac(num: i64, den: i64) -> Self {
                Ratio::new($from(num), $from(den))
            }

            fn parse(s: &str) -> Option<Self> {
                let s = s.trim();
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: $int = p.trim().parse().ok()?;
                        let q: $int = q.trim().parse().ok()?;
                        if q == <$int as num_traits::Zero>::zero() {
                            return None;
                        }
                        Some(Ratio::new(p, q))
                    }
                    None => s.parse::<$int>().ok().map(Ratio::from_integer),
                }
            }

            fn add_ref(&self, other: &Self) -> Self {
                self + other
            }

            fn sub_ref(&self, other: &Self) -> Self {
                self - other
            }

            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }

            fn div_ref(&self, other: &Self) -> Self {
                self / other
            }

            fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
                if a.is_zero() || b.is_zero() {
                    return;
                }
                *self -= a * b;
            }
        }
    };
}

impl_ratio_scalar!(BigInt, BigInt::from);
impl_ratio_scalar!(i64, |n: i64| n);
impl_ratio_scalar!(i128, |n: i64| n as i128);

/// Serde adapter writing a scalar as its canonical `"p/q"` string (`"p"` when
/// the denominator is one). Deserialization also accepts bare JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatStr<T>(pub T);

impl<T: Scalar> Serialize for RatStr<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

struct RatVisitor<T>(PhantomData<T>);

impl<T: Scalar> Visitor<'_> for RatVisitor<T> {
    type Value = RatStr<T>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        T::parse(v)
            .map(RatStr)
            .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(RatStr(T::from_int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        let v = i64::try_from(v).map_err(|_| E::custom("integer out of range"))?;
        Ok(RatStr(T::from_int(v)))
    }
}

impl<'de, T: Scalar> Deserialize<'de> for RatStr<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatVisitor(PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = Rat::from_frac(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        assert!(a.denom() > &BigInt::from(0));
        let b = Rat::from_frac(3, 2);
        assert_eq!((a.clone() + b.clone()).to_string(), "0");
        assert_eq!((a.clone() + b.clone()) - b, a);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Rat::parse("1/4"), Some(Rat::from_frac(1, 4)));
        assert_eq!(Rat::parse(" -7 "), Some(Rat::from_int(-7)));
        assert_eq!(Rat::parse("2/-4"), Some(Rat::from_frac(-1, 2)));
        assert_eq!(Rat::parse("1/0"), None);
        assert_eq!(Rat::parse("0.5"), None);
        assert_eq!(Ratio::<i64>::parse("3/9"), Some(Ratio::new(1, 3)));
    }

    #[test]
    fn json_strings() {
        let v: Vec<RatStr<Rat>> = serde_json::from_str(r#"["1/2", 3, "-4/8"]"#).unwrap();
        assert_eq!(v[1].0, Rat::from_int(3));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-1/2"]"#);
    }

    #[test]
    fn sub_mul_assign_matches_plain_ops() {
        let mut x = Rat::from_frac(5, 3);
        x.sub_mul_assign(&Rat::from_frac(1, 2), &Rat::from_int(4));
        assert_eq!(x, Rat::from_frac(-1, 3));
    }
}
