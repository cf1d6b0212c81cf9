// SPDX-License-Identifier: Apache-2.0

//! Exact scalars: rationals, real quadratic irrationals, 2×2 integer matrices
//! and symmetric 2×2 rational matrices.

mod mat2;
mod quadirr;
mod rat;
mod symt;

pub use mat2::Mat2;
pub use quadirr::{sign_surd, ExtReal, QuadIrr};
pub use rat::{parse_rat, rat, rat_arith, rat_sign, rat_sqrt, rat_to_f64, Rat, RatOp};
pub use symt::{Delta, Reduced, SymT};

/// Serde through `Display`/`FromStr`, so values round-trip as compact strings.
macro_rules! serde_via_string {
    ($ty:ident) => {
        impl<Z: $crate::Int> serde::Serialize for $ty<Z> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de, Z: $crate::Int> serde::Deserialize<'de> for $ty<Z> {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = <std::borrow::Cow<'de, str>>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
pub(crate) use serde_via_string;

/// Serde helpers for a bare [`Rat`] field stored as `"p/q"`.
pub mod rat_string {
    use super::Rat;
    use crate::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<Z: Int, S: Serializer>(r: &Rat<Z>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, Z: Int, D: Deserializer<'de>>(d: D) -> Result<Rat<Z>, D::Error> {
        let s = <std::borrow::Cow<'de, str>>::deserialize(d)?;
        super::parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Split a comma-separated literal into exactly `n` trimmed fields.
pub(crate) fn split_fields<'a>(s: &'a str, n: usize, what: &str) -> crate::Result<Vec<&'a str>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(crate::Error::parse(
            s,
            format!("{what} needs {n} comma-separated fields"),
        ));
    }
    Ok(parts)
}

pub(crate) fn parse_int<Z: crate::Int>(s: &str) -> crate::Result<Z> {
    s.trim()
        .parse()
        .map_err(|_| crate::Error::parse(s, "not an integer"))
}
