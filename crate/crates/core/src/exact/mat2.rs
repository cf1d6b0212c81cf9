// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;


use super::{parse_int, serde_via_string, split_fields, Rat};
use crate::{Error, Int};

/// 2×2 integer matrix `(a b; c d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<Z> {
    pub a: Z,
    pub b: Z,
    pub c: Z,
    pub d: Z,
}

impl<Z: Int> Mat2<Z> {
    pub fn new(a: Z, b: Z, c: Z, d: Z) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(
            Z::from_small(a),
            Z::from_small(b),
            Z::from_small(c),
            Z::from_small(d),
        )
    }

    pub fn identity() -> Self {
        Mat2::new(Z::one(), Z::zero(), Z::zero(), Z::one())
    }

    pub fn det(&self) -> Z {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> Z {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    /// Adjugate; the inverse when `det = 1`.
    pub fn adj(&self) -> Self {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(
            self.a.clone(),
            self.c.clone(),
            self.b.clone(),
            self.d.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Mat2::new(
            -self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    /// `self^k` for any integer `k`; negative powers need `det = 1`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.adj() } else { self.clone() };
        let mut out = Mat2::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Equal as elements of `PSL₂`.
    pub fn eq_projective(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }

    /// Möbius action on `ℚ ∪ {∞}`; `None` is `∞`.
    pub fn apply_rat(&self, x: Option<&Rat<Z>>) -> Option<Rat<Z>> {
        let (num, den) = match x {
            None => (self.a.clone(), self.c.clone()),
            Some(x) => (
                self.a.clone() * x.numer().clone() + self.b.clone() * x.denom().clone(),
                self.c.clone() * x.numer().clone() + self.d.clone() * x.denom().clone(),
            ),
        };
        if den.is_zero() {
            None
        } else {
            Some(Rat::new(num, den))
        }
    }

    pub fn to_i64(&self) -> Option<Mat2<i64>> {
        Some(Mat2::new(
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ))
    }
}

impl<Z: Int> fmt::Display for Mat2<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl<Z: Int> FromStr for Mat2<Z> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let p = split_fields(s, 4, "matrix")?;
        Ok(Mat2::new(
            parse_int(p[0])?,
            parse_int(p[1])?,
            parse_int(p[2])?,
            parse_int(p[3])?,
        ))
    }
}

serde_via_string!(Mat2);
