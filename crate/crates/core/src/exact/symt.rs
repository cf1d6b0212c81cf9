// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;


use num_traits::{One, Signed, Zero};

use super::{parse_rat, rat_to_f64, serde_via_string, split_fields, Mat2, Rat};
use crate::bqf::Bqf;
use crate::{Error, Int, Result};

/// Symmetric matrix `(t1 t0; t0 t2)` with rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymT<Z: Int> {
    pub t1: Rat<Z>,
    pub t0: Rat<Z>,
    pub t2: Rat<Z>,
}

/// `Δ(T) = √((tr T)² − 4 det T)`, with the exact radicand.
#[derive(Debug, Clone, PartialEq)]
pub struct Delta<Z: Int> {
    pub radicand: Rat<Z>,
    pub value: f64,
}

/// Output of [`SymT::reduce`]: `t = γᵀTγ`, followed by `t0 ↦ −t0` when `flipped`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced<Z: Int> {
    pub t: SymT<Z>,
    pub gamma: Mat2<Z>,
    pub flipped: bool,
}

impl<Z: Int> SymT<Z> {
    pub fn new(t1: Rat<Z>, t0: Rat<Z>, t2: Rat<Z>) -> Self {
        SymT { t1, t0, t2 }
    }

    /// `(t1, b/2; b/2, t2)` from integers.
    pub fn half_integral(t1: i64, b: i64, t2: i64) -> Self {
        SymT::new(
            Rat::from_integer(Z::from_small(t1)),
            Rat::new(Z::from_small(b), Z::from_small(2)),
            Rat::from_integer(Z::from_small(t2)),
        )
    }

    /// The matrix of `t(x,y) = ax² + bxy + cy²`.
    pub fn from_form(q: &Bqf<Z>) -> Self {
        SymT::new(
            Rat::from_integer(q.a.clone()),
            Rat::new(q.b.clone(), Z::from_small(2)),
            Rat::from_integer(q.c.clone()),
        )
    }

    pub fn det(&self) -> Rat<Z> {
        self.t1.clone() * self.t2.clone() - self.t0.clone() * self.t0.clone()
    }

    pub fn trace(&self) -> Rat<Z> {
        self.t1.clone() + self.t2.clone()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.t1.is_positive() && self.det().is_positive()
    }

    pub fn is_indefinite(&self) -> bool {
        self.det().is_negative()
    }

    /// `t1, t2 ∈ ℤ` and `2·t0 ∈ ℤ`.
    pub fn is_half_integral(&self) -> bool {
        let two = Rat::from_integer(Z::from_small(2));
        self.t1.is_integer() && self.t2.is_integer() && (self.t0.clone() * two).is_integer()
    }

    /// `t(x,y) = t1·x² + 2t0·xy + t2·y²`.
    pub fn to_form(&self) -> Result<Bqf<Z>> {
        if !self.is_half_integral() {
            return Err(Error::NotHalfIntegral);
        }
        let b = self.t0.clone() * Rat::from_integer(Z::from_small(2));
        Ok(Bqf::new(
            self.t1.to_integer(),
            b.to_integer(),
            self.t2.to_integer(),
        ))
    }

    /// `D = −4 det T`.
    pub fn disc(&self) -> Rat<Z> {
        -self.det() * Rat::from_integer(Z::from_small(4))
    }

    pub fn flip_t0(&self) -> Self {
        SymT::new(self.t1.clone(), -self.t0.clone(), self.t2.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        SymT::new(
            self.t1.clone() - o.t1.clone(),
            self.t0.clone() - o.t0.clone(),
            self.t2.clone() - o.t2.clone(),
        )
    }

    pub fn scale(&self, s: &Rat<Z>) -> Self {
        SymT::new(
            self.t1.clone() * s.clone(),
            self.t0.clone() * s.clone(),
            self.t2.clone() * s.clone(),
        )
    }

    /// `γᵀ T γ`.
    pub fn congruent(&self, g: &Mat2<Z>) -> Self {
        let r = |z: &Z| Rat::from_integer(z.clone());
        let (a, b, c, d) = (r(&g.a), r(&g.b), r(&g.c), r(&g.d));
        let two = r(&Z::from_small(2));
        let (t1, t0, t2) = (&self.t1, &self.t0, &self.t2);
        SymT::new(
            t1.clone() * a.clone() * a.clone()
                + two.clone() * t0.clone() * a.clone() * c.clone()
                + t2.clone() * c.clone() * c.clone(),
            t1.clone() * a.clone() * b.clone()
                + t0.clone() * (a.clone() * d.clone() + b.clone() * c.clone())
                + t2.clone() * c.clone() * d.clone(),
            t1.clone() * b.clone() * b.clone()
                + two * t0.clone() * b.clone() * d.clone()
                + t2.clone() * d.clone() * d.clone(),
        )
    }

    /// `Δ(T)`; errors when the eigenvalues are not real.
    pub fn delta(&self) -> Result<Delta<Z>> {
        let tr = self.trace();
        let radicand = tr.clone() * tr - self.det() * Rat::from_integer(Z::from_small(4));
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        let value = rat_to_f64(&radicand).sqrt();
        Ok(Delta { radicand, value })
    }

    /// Lagrange–Gauss reduction to `2|t0| ≤ t1 ≤ t2`, `t0 ≥ 0`.
    pub fn reduce(&self) -> Result<Reduced<Z>> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let two = Z::from_small(2);
        let l = self
            .t1
            .denom()
            .lcm(self.t2.denom())
            .lcm(&(self.t0.clone() * Rat::from_integer(two.clone())).denom().clone());
        let lr = Rat::from_integer(l.clone());
        let scaled = self.scale(&lr).to_form()?;
        let (red, gamma) = scaled.reduce_posdef()?;
        let t = SymT::new(
            Rat::new(red.a.clone(), l.clone()),
            Rat::new(red.b.clone(), two * l.clone()),
            Rat::new(red.c.clone(), l),
        );
        let flipped = t.t0.is_negative();
        let t = if flipped { t.flip_t0() } else { t };
        Ok(Reduced { t, gamma, flipped })
    }

    pub fn is_reduced(&self) -> bool {
        let two = Rat::from_integer(Z::from_small(2));
        !self.t0.is_negative() && two * self.t0.clone() <= self.t1 && self.t1 <= self.t2
    }

    /// `det T` is the square of a rational.
    pub fn det_is_square(&self) -> bool {
        let d = self.det();
        !d.is_negative()
            && crate::num::exact_sqrt(d.numer()).is_some()
            && crate::num::exact_sqrt(d.denom()).is_some()
    }

    pub fn identity() -> Self {
        SymT::new(Rat::one(), Rat::zero(), Rat::one())
    }
}

impl<Z: Int> fmt::Display for SymT<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.t1, self.t0, self.t2)
    }
}

impl<Z: Int> FromStr for SymT<Z> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p = split_fields(s, 3, "symmetric matrix")?;
        Ok(SymT::new(parse_rat(p[0])?, parse_rat(p[1])?, parse_rat(p[2])?))
    }
}

serde_via_string!(SymT);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type S = SymT<i64>;

    fn sym(s: &str) -> S {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(S::identity().delta().unwrap().value, 0.0);
        assert_eq!(sym("3,0,1").delta().unwrap().value, 2.0);
        let d = sym("2,1/2,3").delta().unwrap();
        assert_eq!(d.radicand, rat(2, 1));
        assert!((d.value - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reduce_examples() {
        let r = S::identity().reduce().unwrap();
        assert_eq!(r.t, S::identity());
        assert_eq!(r.gamma, Mat2::identity());

        let t = sym("3,1/2,2");
        let r = t.reduce().unwrap();
        assert_eq!(r.t, sym("2,1/2,3"));
        let raw = t.congruent(&r.gamma);
        assert_eq!(if r.flipped { raw.flip_t0() } else { raw }, r.t);
        assert_eq!(r.gamma.det(), 1);

        let t = sym("2,5/2,4");
        let r = t.reduce().unwrap();
        assert!(r.t.is_reduced());
        assert_eq!(r.t.det(), t.det());
        assert_eq!(r.t, sym("1,1/2,2"));

        assert_eq!(sym("1,2,1").reduce(), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn rational_entries_reduce() {
        let t = sym("5/3,7/6,5/4");
        let r = t.reduce().unwrap();
        assert!(r.t.is_reduced());
        assert_eq!(r.t.det(), t.det());
    }

    #[test]
    fn form_round_trip() {
        let t = sym("2,1/2,3");
        let q = t.to_form().unwrap();
        assert_eq!((q.a, q.b, q.c), (2, 1, 3));
        assert_eq!(S::from_form(&q), t);
        assert_eq!(t.disc(), rat(-23, 1));
        assert_eq!(sym("1/2,0,1").to_form(), Err(Error::NotHalfIntegral));
        assert_eq!(t.to_string(), "2,1/2,3");
    }
}
