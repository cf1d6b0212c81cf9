// SPDX-License-Identifier: Apache-2.0

//! Integral binary quadratic forms `ax² + bxy + cy²`.

use std::fmt;
use std::str::FromStr;


use crate::exact::{parse_int, serde_via_string, split_fields, Mat2, QuadIrr};
use crate::num::{exact_sqrt, ext_gcd, int};
use crate::{Error, Int, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bqf<Z> {
    pub a: Z,
    pub b: Z,
    pub c: Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    /// Square discriminant (including zero).
    Degenerate,
}

/// A reduced positive definite form standing for its `PSL₂(ℤ)`-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormClass<Z> {
    pub rep: Bqf<Z>,
    pub disc: Z,
    pub content: Z,
}

impl<Z: Int> FormClass<Z> {
    pub fn is_primitive(&self) -> bool {
        self.content.is_one()
    }
}

impl<Z: Int> Bqf<Z> {
    pub fn new(a: Z, b: Z, c: Z) -> Self {
        Bqf { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Bqf::new(int(a), int(b), int(c))
    }

    pub fn disc(&self) -> Z {
        self.b.clone() * self.b.clone() - int::<Z>(4) * self.a.clone() * self.c.clone()
    }

    pub fn content(&self) -> Z {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        Bqf::new(
            self.a.clone() / g.clone(),
            self.b.clone() / g.clone(),
            self.c.clone() / g,
        )
    }

    pub fn kind(&self) -> Kind {
        let d = self.disc();
        if d.is_negative() {
            if self.a.is_positive() {
                Kind::PositiveDefinite
            } else {
                Kind::NegativeDefinite
            }
        } else if exact_sqrt(&d).is_some() {
            Kind::Degenerate
        } else {
            Kind::Indefinite
        }
    }

    pub fn is_definite(&self) -> bool {
        matches!(self.kind(), Kind::PositiveDefinite | Kind::NegativeDefinite)
    }

    pub fn eval(&self, x: &Z, y: &Z) -> Z {
        self.a.clone() * x.clone() * x.clone()
            + self.b.clone() * x.clone() * y.clone()
            + self.c.clone() * y.clone() * y.clone()
    }

    /// `(q·h)(x,y) = q(ax + by, cx + dy)`.
    pub fn act(&self, h: &Mat2<Z>) -> Self {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = int::<Z>(2);
        Bqf::new(
            self.eval(&h.a, &h.c),
            two.clone() * a.clone() * h.a.clone() * h.b.clone()
                + b.clone() * (h.a.clone() * h.d.clone() + h.b.clone() * h.c.clone())
                + two * c.clone() * h.c.clone() * h.d.clone(),
            self.eval(&h.b, &h.d),
        )
    }

    /// `ax² + bxy + cy² ↦ −ax² + bxy − cy²`.
    pub fn tilde(&self) -> Self {
        Bqf::new(-self.a.clone(), self.b.clone(), -self.c.clone())
    }

    pub fn neg(&self) -> Self {
        Bqf::new(-self.a.clone(), -self.b.clone(), -self.c.clone())
    }

    /// `(a, −b, c)`: the inverse class.
    pub fn opposite(&self) -> Self {
        Bqf::new(self.a.clone(), -self.b.clone(), self.c.clone())
    }

    pub fn scale(&self, g: &Z) -> Self {
        Bqf::new(
            self.a.clone() * g.clone(),
            self.b.clone() * g.clone(),
            self.c.clone() * g.clone(),
        )
    }

    /// Roots `ρ± = (−b ± √d)/(2a)` of `q(z, 1)`.
    pub fn roots(&self) -> Result<(QuadIrr<Z>, QuadIrr<Z>)> {
        if self.a.is_zero() {
            return Err(Error::GeodesicThroughInfinity);
        }
        let d = self.disc();
        if d.is_negative() {
            return Err(Error::NotIndefinite(self.to_string()));
        }
        let two_a = int::<Z>(2) * self.a.clone();
        let plus = QuadIrr::new(-self.b.clone(), Z::one(), two_a.clone(), d.clone())?;
        let minus = QuadIrr::new(-self.b.clone(), -Z::one(), two_a, d)?;
        Ok((plus, minus))
    }

    pub fn is_reduced_posdef(&self) -> bool {
        let ab = self.b.abs();
        self.a.is_positive()
            && ab <= self.a
            && self.a <= self.c
            && !((ab == self.a || self.a == self.c) && self.b.is_negative())
    }

    /// Gauss reduction: `q·γ` with `|b| ≤ a ≤ c`, and `b ≥ 0` if `|b| = a` or `a = c`.
    pub fn reduce_posdef(&self) -> Result<(Self, Mat2<Z>)> {
        if self.kind() != Kind::PositiveDefinite {
            return Err(Error::NotPositiveDefinite);
        }
        let s = Mat2::from_i64(0, -1, 1, 0);
        let mut q = self.clone();
        let mut g = Mat2::identity();
        loop {
            if q.c < q.a || (q.a == q.c && q.b.is_negative()) {
                q = q.act(&s);
                g = g.mul(&s);
                continue;
            }
            if q.b > q.a || q.b <= -q.a.clone() {
                let two_a = int::<Z>(2) * q.a.clone();
                let k = (q.a.clone() - q.b.clone()).div_floor(&two_a);
                let t = Mat2::new(Z::one(), k, Z::zero(), Z::one());
                q = q.act(&t);
                g = g.mul(&t);
                continue;
            }
            return Ok((q, g));
        }
    }

    /// Reduction of a definite form: negative definite forms reduce through `−q`.
    pub fn reduce_definite(&self) -> Result<(Self, Mat2<Z>)> {
        match self.kind() {
            Kind::PositiveDefinite => self.reduce_posdef(),
            Kind::NegativeDefinite => {
                let (r, g) = self.neg().reduce_posdef()?;
                Ok((r.neg(), g))
            }
            _ => Err(Error::NotDefinite(self.to_string())),
        }
    }

    /// All `(x, y)` with `q(x, y) = n`, for positive definite `q`.
    ///
    /// Uses `4a·q = (2ax + by)² + |d|y²`.
    pub fn represent(&self, n: &Z) -> Vec<(Z, Z)> {
        let mut out = Vec::new();
        if n.is_negative() {
            return out;
        }
        let four = int::<Z>(4);
        let nd = -self.disc();
        let a = &self.a;
        let four_an = four.clone() * a.clone() * n.clone();
        let ymax = (four_an.clone() / nd.clone()).sqrt() + Z::one();
        let two_a = int::<Z>(2) * a.clone();
        let mut y = -ymax.clone();
        while y <= ymax {
            let rest = four_an.clone() - nd.clone() * y.clone() * y.clone();
            if let Some(s) = exact_sqrt(&rest) {
                let by = self.b.clone() * y.clone();
                let mut cands = vec![s.clone() - by.clone()];
                if !s.is_zero() {
                    cands.push(-s - by);
                }
                for num in cands {
                    if num.is_multiple_of(&two_a) {
                        out.push((num / two_a.clone(), y.clone()));
                    }
                }
            }
            y = y + Z::one();
        }
        out
    }

    /// `SL₂(ℤ)` automorphisms of a definite form: 2, 4 or 6 of them up to content.
    pub fn automorphisms(&self) -> Result<Vec<Mat2<Z>>> {
        let (r, g) = self.reduce_definite()?;
        let r = if r.a.is_negative() { r.neg() } else { r };
        let ginv = g.adj();
        let mut out = Vec::new();
        for v in r.represent(&r.a) {
            for w in r.represent(&r.c) {
                let h = Mat2::new(v.0.clone(), w.0.clone(), v.1.clone(), w.1.clone());
                if h.det().is_one() && r.act(&h) == r {
                    out.push(g.mul(&h).mul(&ginv));
                }
            }
        }
        Ok(out)
    }

    // Indefinite forms with nonsquare discriminant.

    fn sqrt_floor_disc(&self) -> Z {
        self.disc().sqrt()
    }

    /// `|√D − 2|a|| < b < √D`.
    pub fn is_reduced_indef(&self) -> bool {
        let s = self.sqrt_floor_disc();
        let two_a = int::<Z>(2) * self.a.abs();
        self.b.is_positive()
            && self.b <= s
            && s < self.b.clone() + two_a.clone()
            && two_a - self.b.clone() <= s
    }

    /// One step of the reduction operator; returns `(ρ(q), h)` with `q·h = ρ(q)`.
    pub fn rho_step(&self) -> (Self, Mat2<Z>) {
        let d = self.disc();
        let s = d.sqrt();
        let cc = self.c.abs();
        let two_cc = int::<Z>(2) * cc.clone();
        let target = -self.b.clone();
        let r = if cc > s {
            // −|c| < r ≤ |c|
            let lo = -cc.clone();
            let off = (target - lo.clone() - Z::one()).mod_floor(&two_cc);
            lo + Z::one() + off
        } else {
            // √D − 2|c| < r < √D
            let off = (s.clone() - target).mod_floor(&two_cc);
            s - off
        };
        let k = (r.clone() + self.b.clone()) / (int::<Z>(2) * self.c.clone());
        let h = Mat2::new(Z::zero(), -Z::one(), Z::one(), k);
        let next = Bqf::new(
            self.c.clone(),
            r.clone(),
            (r.clone() * r - d) / (int::<Z>(4) * self.c.clone()),
        );
        (next, h)
    }

    /// Reduction of an indefinite form of nonsquare discriminant.
    pub fn reduce_indef(&self) -> Result<(Self, Mat2<Z>)> {
        if self.kind() != Kind::Indefinite {
            return Err(Error::NotIndefinite(self.to_string()));
        }
        let mut q = self.clone();
        let mut g = Mat2::identity();
        while !q.is_reduced_indef() {
            let (n, h) = q.rho_step();
            q = n;
            g = g.mul(&h);
        }
        Ok((q, g))
    }

    /// The cycle of reduced forms through a reduced indefinite form, with
    /// cumulative matrices from `self`.
    pub fn indef_cycle(&self) -> Vec<(Self, Mat2<Z>)> {
        let mut out = vec![(self.clone(), Mat2::identity())];
        let mut q = self.clone();
        let mut g = Mat2::identity();
        loop {
            let (n, h) = q.rho_step();
            g = g.mul(&h);
            if n == *self {
                return out;
            }
            out.push((n.clone(), g.clone()));
            q = n;
        }
    }
}

/// Some `γ ∈ SL₂(ℤ)` with `q1·γ = q2`.
pub fn equivalent_psl2z<Z: Int>(q1: &Bqf<Z>, q2: &Bqf<Z>) -> Option<Mat2<Z>> {
    if q1.disc() != q2.disc() {
        return None;
    }
    match (q1.kind(), q2.kind()) {
        (k1, k2) if k1 != k2 => None,
        (Kind::PositiveDefinite, _) | (Kind::NegativeDefinite, _) => {
            let (r1, g1) = q1.reduce_definite().ok()?;
            let (r2, g2) = q2.reduce_definite().ok()?;
            (r1 == r2).then(|| g1.mul(&g2.adj()))
        }
        (Kind::Indefinite, _) => {
            let (r1, g1) = q1.reduce_indef().ok()?;
            let (r2, g2) = q2.reduce_indef().ok()?;
            r1.indef_cycle()
                .into_iter()
                .find(|(f, _)| *f == r2)
                .map(|(_, h)| g1.mul(&h).mul(&g2.adj()))
        }
        _ => (q1 == q2).then(Mat2::identity),
    }
}

fn check_neg_disc<Z: Int>(d: &Z) -> Result<()> {
    let r = d.mod_floor(&int(4));
    if !d.is_negative() || !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidDiscriminant(d.to_string()));
    }
    Ok(())
}

/// Reduced positive definite forms of discriminant `d < 0`, imprimitive ones included.
pub fn classes<Z: Int>(d: &Z) -> Result<Vec<FormClass<Z>>> {
    check_neg_disc(d)?;
    let nd = -d.clone();
    let four = int::<Z>(4);
    let mut out = Vec::new();
    let mut a = Z::one();
    while int::<Z>(3) * a.clone() * a.clone() <= nd {
        let mut b = -a.clone() + Z::one();
        while b <= a {
            let num = b.clone() * b.clone() - d.clone();
            let den = four.clone() * a.clone();
            if num.is_multiple_of(&den) {
                let c = num / den;
                let q = Bqf::new(a.clone(), b.clone(), c);
                if q.is_reduced_posdef() {
                    out.push(FormClass {
                        content: q.content(),
                        rep: q,
                        disc: d.clone(),
                    });
                }
            }
            b = b + Z::one();
        }
        a = a + Z::one();
    }
    Ok(out)
}

fn class_of<Z: Int>(q: &Bqf<Z>) -> Result<FormClass<Z>> {
    let (rep, _) = q.reduce_posdef()?;
    Ok(FormClass {
        disc: rep.disc(),
        content: rep.content(),
        rep,
    })
}

fn check_primitive_posdef<Z: Int>(q: &Bqf<Z>) -> Result<()> {
    if q.kind() != Kind::PositiveDefinite {
        return Err(Error::NotDefinite(q.to_string()));
    }
    if !q.is_primitive() {
        return Err(Error::NotPrimitive(q.to_string()));
    }
    Ok(())
}

/// Gauss composition of primitive positive definite forms.
pub fn compose<Z: Int>(q1: &Bqf<Z>, q2: &Bqf<Z>) -> Result<FormClass<Z>> {
    check_primitive_posdef(q1)?;
    check_primitive_posdef(q2)?;
    let d = q1.disc();
    if d != q2.disc() {
        return Err(Error::DiscriminantMismatch(q1.to_string(), q2.to_string()));
    }
    let two = int::<Z>(2);
    let (a1, b1, a2, b2) = (&q1.a, &q1.b, &q2.a, &q2.b);
    let s = (b1.clone() + b2.clone()) / two.clone();
    let (g1, x1, y1) = ext_gcd(a1, a2);
    let (e, u, z) = ext_gcd(&g1, &s);
    let (x, y) = (u.clone() * x1, u * y1);
    let big_a = a1.clone() * a2.clone() / (e.clone() * e.clone());
    let num = x * a1.clone() * b2.clone()
        + y * a2.clone() * b1.clone()
        + z * (b1.clone() * b2.clone() + d.clone()) / two.clone();
    let big_b = (num / e).mod_floor(&(two * big_a.clone()));
    let big_c = (big_b.clone() * big_b.clone() - d) / (int::<Z>(4) * big_a.clone());
    class_of(&Bqf::new(big_a, big_b, big_c))
}

/// Hermite basis `(g, x), (0, h)` of the full-rank sublattice of `ℤ²` spanned by `rows`.
pub(crate) fn hnf2<Z: Int>(rows: &[(Z, Z)]) -> Result<((Z, Z), (Z, Z))> {
    let mut rows: Vec<(Z, Z)> = rows.to_vec();
    loop {
        rows.sort_by(|p, q| (p.0.is_zero(), p.0.abs()).cmp(&(q.0.is_zero(), q.0.abs())));
        let nonzero = rows.iter().filter(|r| !r.0.is_zero()).count();
        if nonzero <= 1 {
            break;
        }
        let (p0, p1) = rows[0].clone();
        for r in rows.iter_mut().skip(1) {
            if !r.0.is_zero() {
                let k = r.0.div_floor(&p0);
                r.0 = r.0.clone() - k.clone() * p0.clone();
                r.1 = r.1.clone() - k * p1.clone();
            }
        }
    }
    let first = rows[0].clone();
    let h = rows[1..].iter().fold(Z::zero(), |g, r| g.gcd(&r.1));
    if first.0.is_zero() || h.is_zero() {
        return Err(Error::InvalidLattice("rank below 2".into()));
    }
    Ok((first, (Z::zero(), h)))
}

/// `−2[q0]` via the square of the ideal `ℤa + ℤω`, `ω = (−b + √d)/2`.
pub fn double_inverse<Z: Int>(q0: &Bqf<Z>) -> Result<FormClass<Z>> {
    check_primitive_posdef(q0)?;
    let (q0, _) = q0.reduce_posdef()?;
    let (a, b, c) = (&q0.a, &q0.b, &q0.c);
    let (e1, mut e2) = hnf2(&[
        (a.clone() * a.clone(), Z::zero()),
        (Z::zero(), a.clone()),
        (-a.clone() * c.clone(), -b.clone()),
    ])?;
    if (e1.0.clone() * e2.1.clone() - e1.1.clone() * e2.0.clone()).is_negative() {
        e2 = (-e2.0, -e2.1);
    }
    // N(u + vω) = u² − buv + acv²
    let norm = Bqf::new(Z::one(), -b.clone(), a.clone() * c.clone());
    let n1 = norm.eval(&e1.0, &e1.1);
    let n2 = norm.eval(&e2.0, &e2.1);
    let n12 = norm.eval(&(e1.0.clone() + e2.0.clone()), &(e1.1.clone() + e2.1.clone()));
    let a2 = a.clone() * a.clone();
    let form = Bqf::new(
        n1.clone() / a2.clone(),
        (n12 - n1 - n2.clone()) / a2.clone(),
        n2 / a2,
    );
    class_of(&form)
}

/// Unimodular column reduction of a nonzero row `u ∈ ℤ³`; returns a basis of its kernel.
pub(crate) fn kernel3<Z: Int>(u: &[Z; 3]) -> Result<[[Z; 3]; 2]> {
    if u.iter().all(Z::is_zero) {
        return Err(Error::InvalidLattice("zero row".into()));
    }
    let e = |i: usize| {
        let mut v = [Z::zero(), Z::zero(), Z::zero()];
        v[i] = Z::one();
        v
    };
    let mut cols = [e(0), e(1), e(2)];
    let mut row = u.clone();
    let lin = |x: &Z, p: &[Z; 3], y: &Z, q: &[Z; 3]| -> [Z; 3] {
        [
            x.clone() * p[0].clone() + y.clone() * q[0].clone(),
            x.clone() * p[1].clone() + y.clone() * q[1].clone(),
            x.clone() * p[2].clone() + y.clone() * q[2].clone(),
        ]
    };
    for j in [1usize, 2] {
        let (g, x, y) = ext_gcd(&row[0], &row[j]);
        if g.is_zero() {
            continue;
        }
        let new0 = lin(&x, &cols[0], &y, &cols[j]);
        let newj = lin(
            &(-row[j].clone() / g.clone()),
            &cols[0],
            &(row[0].clone() / g.clone()),
            &cols[j],
        );
        cols[0] = new0;
        cols[j] = newj;
        row[0] = g;
        row[j] = Z::zero();
    }
    Ok([cols[1].clone(), cols[2].clone()])
}

pub(crate) fn det3<Z: Int>(r: [&[Z; 3]; 3]) -> Z {
    let m = |i: usize, j: usize| r[i][j].clone();
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Gram binary form of a ternary quadratic form on two basis vectors.
pub(crate) fn restrict<Z: Int>(
    quad: impl Fn(&[Z; 3]) -> Z,
    b1: &[Z; 3],
    b2: &[Z; 3],
) -> Bqf<Z> {
    let sum = [
        b1[0].clone() + b2[0].clone(),
        b1[1].clone() + b2[1].clone(),
        b1[2].clone() + b2[2].clone(),
    ];
    let (q1, q2) = (quad(b1), quad(b2));
    Bqf::new(q1.clone(), quad(&sum) - q1 - q2.clone(), q2)
}

/// Oriented basis of `L_q` and its Gram form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLq<Z> {
    /// Coordinates `(x, y, z)` of `X = (−x y; z x)`.
    pub basis: [[Z; 3]; 2],
    pub gram: Bqf<Z>,
}

/// The lattice `L_q = {X ∈ L′ : (X, X_q) = 0}` with `Q(X) = −det X = x² + yz`.
pub fn lattice_lq<Z: Int>(q: &Bqf<Z>) -> Result<LatticeLq<Z>> {
    check_primitive_posdef(q)?;
    let [b1, mut b2] = kernel3(&[q.b.clone(), q.a.clone(), -q.c.clone()])?;
    let xq = [
        q.b.clone(),
        int::<Z>(-2) * q.c.clone(),
        int::<Z>(2) * q.a.clone(),
    ];
    if det3([&b1, &b2, &xq]).is_negative() {
        b2 = [-b2[0].clone(), -b2[1].clone(), -b2[2].clone()];
    }
    let gram = restrict(
        |v: &[Z; 3]| v[0].clone() * v[0].clone() + v[1].clone() * v[2].clone(),
        &b1,
        &b2,
    );
    Ok(LatticeLq {
        basis: [b1, b2],
        gram,
    })
}

impl<Z: Int> fmt::Display for Bqf<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl<Z: Int> FromStr for Bqf<Z> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p = split_fields(s, 3, "form")?;
        Ok(Bqf::new(parse_int(p[0])?, parse_int(p[1])?, parse_int(p[2])?))
    }
}

serde_via_string!(Bqf);
