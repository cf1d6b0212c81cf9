// SPDX-License-Identifier: Apache-2.0

//! Scalar traits.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar: `i64`, `i128` and [`num_bigint::BigInt`] all qualify.
pub trait Int:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a small constant.
    #[inline]
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("small constant fits every integer scalar")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Floating-point scalar for quadrature: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + FromPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl<T> Real for T where
    T: num_traits::Float
        + num_traits::FloatConst
        + FromPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for [`Int::from_small`].
#[inline]
pub fn int<Z: Int>(v: i64) -> Z {
    Z::from_small(v)
}

/// Sign of an integer as `-1`, `0`, `+1`.
#[inline]
pub fn sign<Z: Int>(v: &Z) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `Some(s)` when `n = s²` for some integer `s ≥ 0`.
pub fn exact_sqrt<Z: Int>(n: &Z) -> Option<Z> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if s.clone() * s.clone() == *n {
        Some(s)
    } else {
        None
    }
}

/// Widen to [`num_bigint::BigInt`].
pub fn to_bigint<Z: Int>(z: &Z) -> num_bigint::BigInt {
    match z.to_i128() {
        Some(v) => v.into(),
        None => z.to_string().parse().expect("integer display"),
    }
}

/// Narrow from [`num_bigint::BigInt`]; `None` on overflow.
pub fn from_bigint<Z: Int>(b: &num_bigint::BigInt) -> Option<Z> {
    match b.to_i128() {
        Some(v) => Z::from_i128(v),
        None => b.to_string().parse().ok(),
    }
}

/// Extended gcd: `(g, x, y)` with `a·x + b·y = g ≥ 0`.
pub fn ext_gcd<Z: Int>(a: &Z, b: &Z) -> (Z, Z, Z) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Serde for integer scalars: a JSON number when it fits `i64`, else a string.
pub mod int_serde {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        N(i64),
        S(String),
    }

    pub fn serialize<Z: Int, S: Serializer>(z: &Z, s: S) -> Result<S::Ok, S::Error> {
        match z.to_i64() {
            Some(v) => v.serialize(s),
            None => s.collect_str(z),
        }
    }

    pub fn deserialize<'de, Z: Int, D: Deserializer<'de>>(d: D) -> Result<Z, D::Error> {
        match Repr::deserialize(d)? {
            Repr::N(v) => Ok(Z::from_small(v)),
            Repr::S(s) => s
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}"))),
        }
    }
}
