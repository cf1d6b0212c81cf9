// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;


use super::Rat;
use crate::num::{exact_sqrt, sign};
use crate::{Error, Int, Result};

/// Sign of `a + b·√d` for `d ≥ 0`, using integer arithmetic only.
pub fn sign_surd<Z: Int>(a: &Z, b: &Z, d: &Z) -> i32 {
    let sa = sign(a);
    let sb = if d.is_zero() { 0 } else { sign(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a.clone() * a.clone();
    let rhs = b.clone() * b.clone() * d.clone();
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Sign of `a + b·√d1 + c·√d2`.
fn sign_two_surds<Z: Int>(a: &Z, b: &Z, d1: &Z, c: &Z, d2: &Z) -> i32 {
    if d1 == d2 {
        return sign_surd(a, &(b.clone() + c.clone()), d1);
    }
    if b.is_zero() || d1.is_zero() {
        return sign_surd(a, c, d2);
    }
    if c.is_zero() || d2.is_zero() {
        return sign_surd(a, b, d1);
    }
    let s1 = sign_surd(a, b, d1);
    let s2 = sign(c);
    if s1 == 0 {
        return s2;
    }
    if s1 == s2 {
        return s1;
    }
    // (a + b√d1)² − c²d2
    let two = Z::from_small(2);
    let rat_part = a.clone() * a.clone() + b.clone() * b.clone() * d1.clone()
        - c.clone() * c.clone() * d2.clone();
    let surd_part = two * a.clone() * b.clone();
    match sign_surd(&rat_part, &surd_part, d1) {
        1 => s1,
        -1 => s2,
        _ => 0,
    }
}

/// Real quadratic irrational `(p + q√d)/r`.
///
/// Canonical: `r > 0`, `gcd(p, q, r) = 1`, and `q = d = 0` whenever the value
/// is rational. Equality and order are decided exactly.
#[derive(Debug, Clone)]
pub struct QuadIrr<Z> {
    p: Z,
    q: Z,
    r: Z,
    d: Z,
}

impl<Z: Int> QuadIrr<Z> {
    pub fn new(p: Z, q: Z, r: Z, d: Z) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        let (mut p, mut q, mut d) = (p, q, d);
        if let Some(s) = exact_sqrt(&d) {
            p = p + q.clone() * s;
            q = Z::zero();
        }
        if q.is_zero() {
            d = Z::zero();
        }
        let mut r = r;
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p = p / g.clone();
            q = q / g.clone();
            r = r / g;
        }
        Ok(QuadIrr { p, q, r, d })
    }

    pub fn from_rat(x: &Rat<Z>) -> Self {
        QuadIrr {
            p: x.numer().clone(),
            q: Z::zero(),
            r: x.denom().clone(),
            d: Z::zero(),
        }
    }

    pub fn from_int(n: Z) -> Self {
        QuadIrr {
            p: n,
            q: Z::zero(),
            r: Z::one(),
            d: Z::zero(),
        }
    }

    pub fn p(&self) -> &Z {
        &self.p
    }
    pub fn q(&self) -> &Z {
        &self.q
    }
    pub fn r(&self) -> &Z {
        &self.r
    }
    pub fn d(&self) -> &Z {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat<Z>> {
        self.is_rational()
            .then(|| Rat::new(self.p.clone(), self.r.clone()))
    }

    /// Exact sign of `self − other`.
    pub fn cmp_sign(&self, other: &Self) -> i32 {
        let a = self.p.clone() * other.r.clone() - other.p.clone() * self.r.clone();
        let b = self.q.clone() * other.r.clone();
        let c = -(other.q.clone() * self.r.clone());
        sign_two_surds(&a, &b, &self.d, &c, &other.d)
    }

    /// Exact sign of `self − x` for rational `x`.
    pub fn cmp_rat(&self, x: &Rat<Z>) -> i32 {
        let a = self.p.clone() * x.denom().clone() - x.numer().clone() * self.r.clone();
        let b = self.q.clone() * x.denom().clone();
        sign_surd(&a, &b, &self.d)
    }

    pub fn signum(&self) -> i32 {
        sign_surd(&self.p, &self.q, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |z: &Z| z.to_f64().unwrap_or(f64::NAN);
        (f(&self.p) + f(&self.q) * f(&self.d).sqrt()) / f(&self.r)
    }

    /// `x + s` for rational `s`.
    pub fn add_rat(&self, s: &Rat<Z>) -> Self {
        let (n, m) = (s.numer().clone(), s.denom().clone());
        Self::new(
            self.p.clone() * m.clone() + n * self.r.clone(),
            self.q.clone() * m.clone(),
            self.r.clone() * m,
            self.d.clone(),
        )
        .expect("nonzero denominator")
    }

    /// `x · s` for rational `s`.
    pub fn mul_rat(&self, s: &Rat<Z>) -> Self {
        let (n, m) = (s.numer().clone(), s.denom().clone());
        Self::new(
            self.p.clone() * n.clone(),
            self.q.clone() * n,
            self.r.clone() * m,
            self.d.clone(),
        )
        .expect("nonzero denominator")
    }
}

impl<Z: Int> std::ops::Neg for QuadIrr<Z> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadIrr {
            p: -self.p,
            q: -self.q,
            r: self.r,
            d: self.d,
        }
    }
}

impl<Z: Int> PartialEq for QuadIrr<Z> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_sign(other) == 0
    }
}
impl<Z: Int> Eq for QuadIrr<Z> {}

impl<Z: Int> PartialOrd for QuadIrr<Z> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<Z: Int> Ord for QuadIrr<Z> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_sign(other).cmp(&0)
    }
}

impl<Z: Int> fmt::Display for QuadIrr<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let sq = if self.q.is_one() {
            format!("√{}", self.d)
        } else if (-self.q.clone()).is_one() {
            format!("-√{}", self.d)
        } else {
            format!("{}√{}", self.q, self.d)
        };
        let num = if self.p.is_zero() {
            sq
        } else if self.q.is_positive() {
            format!("{}+{}", self.p, sq)
        } else {
            format!("{}{}", self.p, sq)
        };
        if self.r.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

/// A point of `ℝ ∪ {∞}` with quadratic-irrational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtReal<Z: Int> {
    Finite(QuadIrr<Z>),
    Infinity,
}

impl<Z: Int> fmt::Display for ExtReal<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => x.fmt(f),
            ExtReal::Infinity => f.write_str("∞"),
        }
    }
}
