// SPDX-License-Identifier: Apache-2.0

//! The congruence subgroup `Γ′ = Γ₁(5)`, its ideal-hexagon fundamental domain
//! `F` with vertices `∞, 0, 1/3, 2/5, 1/2, 1`, geodesic traversal with
//! homology, reduction of CM points into `F`, and winding numbers.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bqf::{Bqf, FormClass, Kind};
use crate::exact::{ExtReal, Mat2, QuadIrr, Rat};
use crate::num::{from_bigint, int, sign, to_bigint};
use crate::{Error, Int, Result};

/// Intersection numbers with the three boundary curves `(c_r, c_g, c_b)`.
pub type HVec = [i64; 3];

/// `γ ≡ ±(1 *; 0 1) mod 5`.
pub fn in_gamma15<Z: Int>(g: &Mat2<Z>) -> Result<bool> {
    if !g.det().is_one() {
        return Err(Error::BadDeterminant {
            expected: "1".into(),
            got: g.det().to_string(),
        });
    }
    let five = int::<Z>(5);
    let m = |z: &Z| z.mod_floor(&five).to_i64().expect("residue mod 5");
    let (a, c, d) = (m(&g.a), m(&g.c), m(&g.d));
    Ok(c == 0 && ((a == 1 && d == 1) || (a == 4 && d == 4)))
}

fn member<Z: Int>(g: &Mat2<Z>) -> bool {
    in_gamma15(g).unwrap_or(false)
}

/// `z ↦ z + 1`, pairing `(∞, 0)` with `(1, ∞)`.
pub fn pairing_t<Z: Int>() -> Mat2<Z> {
    Mat2::from_i64(1, 1, 0, 1)
}

/// Pairs `(0, 1/3)` with `(1, 1/2)`.
pub fn pairing_p2<Z: Int>() -> Mat2<Z> {
    Mat2::from_i64(4, -1, 5, -1)
}

/// Pairs `(1/3, 2/5)` with `(1/2, 2/5)`.
pub fn pairing_p3<Z: Int>() -> Mat2<Z> {
    Mat2::from_i64(11, -4, 25, -9)
}

/// Finite vertices of `F` in increasing order.
pub fn vertices<Z: Int>() -> [Rat<Z>; 5] {
    let r = |n: i64, d: i64| Rat::new(int(n), int(d));
    [r(0, 1), r(1, 3), r(2, 5), r(1, 2), r(1, 1)]
}

/// Boundary arcs of `ℝ ∪ {∞}` cut by the vertices, as `(left, right)`,
/// `None` standing for `∞`.
pub fn arcs<Z: Int>() -> [(Option<Rat<Z>>, Option<Rat<Z>>); 6] {
    let v = vertices::<Z>();
    [
        (None, Some(v[0].clone())),
        (Some(v[0].clone()), Some(v[1].clone())),
        (Some(v[1].clone()), Some(v[2].clone())),
        (Some(v[2].clone()), Some(v[3].clone())),
        (Some(v[3].clone()), Some(v[4].clone())),
        (Some(v[4].clone()), None),
    ]
}

const ARC_H: [HVec; 6] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [0, 0, -1],
    [0, -1, 0],
    [-1, 0, 0],
];

/// Centre and radius of the four bounded sides of `F`.
fn circles<Z: Int>() -> [(Rat<Z>, Rat<Z>); 4] {
    let r = |n: i64, d: i64| Rat::new(int(n), int(d));
    [
        (r(1, 6), r(1, 6)),
        (r(11, 30), r(1, 30)),
        (r(9, 20), r(1, 20)),
        (r(3, 4), r(1, 4)),
    ]
}

/// Index `k ∈ 0..6` of the arc containing `x`.
pub fn arc_index<Z: Int>(x: &ExtReal<Z>) -> Result<usize> {
    let x = match x {
        ExtReal::Infinity => return Err(Error::CuspEndpoint("∞".into())),
        ExtReal::Finite(x) => x,
    };
    let mut k = 0;
    for v in vertices::<Z>() {
        match x.cmp_rat(&v) {
            0 => return Err(Error::CuspEndpoint(v.to_string())),
            s if s > 0 => k += 1,
            _ => {}
        }
    }
    Ok(k)
}

/// The piecewise-constant boundary indicator `h`.
pub fn h_function<Z: Int>(x: &ExtReal<Z>) -> Result<HVec> {
    Ok(ARC_H[arc_index(x)?])
}

/// Side-pairing applied when the geodesic leaves `F` through arc `k`.
pub fn exit_step<Z: Int>(k: usize) -> Mat2<Z> {
    match k {
        0 => pairing_t::<Z>().adj(),
        5 => pairing_t(),
        1 => pairing_p2::<Z>().adj(),
        4 => pairing_p2(),
        2 => pairing_p3::<Z>().adj(),
        _ => pairing_p3(),
    }
}

fn root_arcs<Z: Int>(q: &Bqf<Z>) -> Result<(usize, usize)> {
    let (p, m) = q.roots()?;
    Ok((
        arc_index(&ExtReal::Finite(p))?,
        arc_index(&ExtReal::Finite(m))?,
    ))
}

/// The geodesic of `q` meets the interior of `F`.
pub fn intersects_f<Z: Int>(q: &Bqf<Z>) -> Result<bool> {
    if q.kind() != Kind::Indefinite {
        return Err(Error::NotIndefinite(q.to_string()));
    }
    let (kp, km) = root_arcs(q)?;
    Ok(kp != km)
}

/// `Γ′`-translates of a closed geodesic that cross `F`, in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GeodesicCycle<Z: Int> {
    #[serde(with = "crate::num::int_serde")]
    pub disc: Z,
    pub forms: Vec<Bqf<Z>>,
    pub homology: HVec,
}

impl<Z: Int> GeodesicCycle<Z> {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Pairing matrices `γ_i` with `q_{i+1} = q_i·γ_i`.
    pub fn steps(&self) -> Vec<Mat2<Z>> {
        self.forms
            .iter()
            .map(|q| exit_step(root_arcs(q).expect("validated cycle").1))
            .collect()
    }

    /// The same cycle started at position `k`.
    pub fn rotate(&self, k: usize) -> Self {
        let mut forms = self.forms.clone();
        if !forms.is_empty() {
            let n = forms.len();
            forms.rotate_left(k % n);
        }
        GeodesicCycle {
            disc: self.disc.clone(),
            forms,
            homology: self.homology,
        }
    }
}

fn non_closed(e: Error) -> Error {
    match e {
        Error::GeodesicThroughInfinity | Error::CuspEndpoint(_) => {
            Error::NonClosedGeodesic(e.to_string())
        }
        e => e,
    }
}

const MAX_CYCLE: usize = 1 << 20;

/// Walk the closed geodesic of `q` through `F`.
///
/// Enters through the arc of `ρ⁺` and leaves through the arc of `ρ⁻`; each
/// crossing contributes `(h(ρ⁻) − h(ρ⁺))/2` to the homology.
pub fn traverse<Z: Int>(q: &Bqf<Z>) -> Result<GeodesicCycle<Z>> {
    if q.kind() != Kind::Indefinite {
        return Err(Error::NotIndefinite(q.to_string()));
    }
    if q.a.is_zero() {
        return Err(Error::NonClosedGeodesic(Error::GeodesicThroughInfinity.to_string()));
    }
    let d = q.disc();
    // top of the semicircle, lifted into F
    let (a, b, c) = (to_bigint(&q.a), to_bigint(&q.b), to_bigint(&q.c));
    let two_a = BigInt::from(2) * &a;
    let top = Bqf::new(&two_a * &a, &two_a * &b, &b * &b - &two_a * &c).primitive_part();
    let (_, g) = reduce_point_to_f(&top)?;
    let narrow = |v: &BigInt| from_bigint::<Z>(v).ok_or_else(|| Error::Domain("reduction overflows the scalar type".into()));
    let g = Mat2::new(narrow(&g.a)?, narrow(&g.b)?, narrow(&g.c)?, narrow(&g.d)?);
    let first = q.act(&g);
    let mut forms = Vec::new();
    let mut twice = [0i64; 3];
    let mut cur = first.clone();
    loop {
        let (kp, km) = root_arcs(&cur).map_err(non_closed)?;
        if kp == km {
            return Err(Error::NonClosedGeodesic(format!("{cur} misses F")));
        }
        for i in 0..3 {
            twice[i] += ARC_H[km][i] - ARC_H[kp][i];
        }
        forms.push(cur.clone());
        cur = cur.act(&exit_step(km));
        if cur == first {
            break;
        }
        if forms.len() > MAX_CYCLE {
            return Err(Error::NonClosedGeodesic("walk did not close".into()));
        }
    }
    if twice.iter().any(|v| v % 2 != 0) {
        return Err(Error::NonClosedGeodesic("non-integral homology".into()));
    }
    Ok(GeodesicCycle {
        disc: d,
        forms,
        homology: twice.map(|v| v / 2),
    })
}

/// Right coset representatives `β_j` of `Γ′` in `PSL₂(ℤ)`; each maps the
/// region `R = {0 ≤ x ≤ 1, |z| ≥ 1, |z − 1| ≥ 1}` into `F`.
pub fn coset_reps<Z: Int>() -> Vec<Mat2<Z>> {
    let u = Mat2::from_i64(1, -1, 1, 0);
    let powers = [Mat2::identity(), u.clone(), u.mul(&u)];
    let gs = [
        Mat2::identity(),
        Mat2::from_i64(1, -1, 2, -1),
        Mat2::from_i64(1, -1, 3, -2),
        Mat2::from_i64(2, -1, 5, -2),
    ];
    gs.iter()
        .flat_map(|g| powers.iter().map(move |p| g.mul(p)))
        .collect()
}

/// Index `j` with `g ∈ Γ′β_j`.
pub fn coset_index<Z: Int>(g: &Mat2<Z>) -> usize {
    coset_reps::<Z>()
        .iter()
        .position(|b| member(&g.mul(&b.adj())))
        .expect("coset representatives are exhaustive")
}

/// A definite form together with the orientation of its CM point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct OrientedPoint<Z: Int> {
    pub form: Bqf<Z>,
    pub sign: i32,
}

impl<Z: Int> OrientedPoint<Z> {
    pub fn new(form: Bqf<Z>) -> Result<Self> {
        let sign = match form.kind() {
            Kind::PositiveDefinite => 1,
            Kind::NegativeDefinite => -1,
            _ => return Err(Error::NotDefinite(form.to_string())),
        };
        Ok(OrientedPoint { form, sign })
    }
}

/// `(x, y²)` of the root `z_q` of a definite form.
pub fn point_coords<Z: Int>(q: &Bqf<Z>) -> (Rat<Z>, Rat<Z>) {
    let two_a = int::<Z>(2) * q.a.clone();
    let x = Rat::new(-q.b.clone(), two_a.clone());
    let y2 = Rat::new(-q.disc(), two_a.clone() * two_a);
    (x, y2)
}

/// `z_q` lies in the closure of `F`.
pub fn in_f<Z: Int>(q: &Bqf<Z>) -> bool {
    if !q.is_definite() {
        return false;
    }
    let (x, y2) = point_coords(q);
    if x < Rat::from_integer(Z::zero()) || x > Rat::from_integer(Z::one()) {
        return false;
    }
    circles::<Z>().iter().all(|(c, r)| {
        let dx = x.clone() - c.clone();
        dx.clone() * dx + y2.clone() >= r.clone() * r.clone()
    })
}

fn on_circle<Z: Int>(x: &Rat<Z>, y2: &Rat<Z>, k: usize) -> bool {
    let (c, r) = circles::<Z>()[k].clone();
    let dx = x.clone() - c;
    dx.clone() * dx + y2.clone() == r.clone() * r
}

/// `(q′, δ)` with `δ ∈ Γ′`, `q′ = q·δ` and `z_{q′} ∈ F`.
///
/// Points on `∂F` are moved to the sides `x = 0`, `(0, 1/3)` and `(1/3, 2/5)`.
pub fn reduce_point_to_f<Z: Int>(q: &Bqf<Z>) -> Result<(Bqf<Z>, Mat2<Z>)> {
    let (r, mut g) = q.reduce_definite()?;
    if point_coords(&r).0.numer().is_negative() {
        g = g.mul(&pairing_t::<Z>().adj());
    }
    let j = coset_index(&g);
    let beta = coset_reps::<Z>()[j].clone();
    let mut delta = g.mul(&beta.adj());
    let mut p = q.act(&delta);
    let (x, y2) = point_coords(&p);
    let fix = if x.is_one() {
        Some(pairing_t())
    } else if on_circle(&x, &y2, 3) {
        Some(pairing_p2())
    } else if on_circle(&x, &y2, 2) {
        Some(pairing_p3())
    } else {
        None
    };
    if let Some(h) = fix {
        p = p.act(&h);
        delta = delta.mul(&h);
    }
    debug_assert!(in_f(&p));
    Ok((p, delta))
}

/// Winding number of the closed geodesic `cyc` around the point `z_p ∈ F`.
///
/// Each crossing form contributes `sgn(a)` when `z_p` lies inside its
/// semicircle and `sgn(a)/2` when on it.
pub fn winding<Z: Int>(p: &Bqf<Z>, cyc: &GeodesicCycle<Z>) -> Result<Rat<Z>> {
    if !in_f(p) {
        return Err(Error::PointNotReduced);
    }
    let (x, y2) = point_coords(p);
    let four = int::<Z>(4);
    let mut twice = Z::zero();
    for f in &cyc.forms {
        let a2 = four.clone() * f.a.clone() * f.a.clone();
        let r2 = Rat::new(f.disc(), a2);
        let dx = x.clone() + Rat::new(f.b.clone(), int::<Z>(2) * f.a.clone());
        let dist2 = dx.clone() * dx + y2.clone();
        let s = sign((r2 - dist2).numer()) + 1;
        twice = twice + int::<Z>((sign(&f.a) * s) as i64);
    }
    Ok(Rat::new(twice, int(2)))
}

/// Winding number of an oriented point: the point's sign times [`winding`].
pub fn winding_oriented<Z: Int>(pt: &OrientedPoint<Z>, cyc: &GeodesicCycle<Z>) -> Result<Rat<Z>> {
    let pos = if pt.sign < 0 { pt.form.neg() } else { pt.form.clone() };
    let w = winding(&pos, cyc)?;
    Ok(if pt.sign < 0 { -w } else { w })
}

/// The distinct `Γ′`-translates of a definite class, each reduced into `F`,
/// paired with the reduced translate of the opposite point `−q̃ = (a, −b, c)`.
pub fn class_orbit_points<Z: Int>(c: &FormClass<Z>) -> Result<Vec<(Bqf<Z>, Bqf<Z>)>> {
    let (mut r, _) = c.rep.reduce_posdef()?;
    if point_coords(&r).0.numer().is_negative() {
        r = r.act(&pairing_t::<Z>().adj());
    }
    let aut = r.automorphisms()?;
    let betas = coset_reps::<Z>();
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..betas.len() {
        let binv = betas[j].adj();
        let dup = kept
            .iter()
            .any(|&i| aut.iter().any(|al| member(&betas[i].mul(al).mul(&binv))));
        if !dup {
            kept.push(j);
        }
    }
    kept.into_iter()
        .map(|j| {
            let raw = r.act(&betas[j].adj());
            let (q, _) = reduce_point_to_f(&raw)?;
            let (partner, _) = reduce_point_to_f(&q.opposite())?;
            Ok((q, partner))
        })
        .collect()
}

/// `z` is inside `F̄` as an exact quadratic point `(x, y²)`; helper for tests.
pub fn vertex_list<Z: Int>() -> Vec<ExtReal<Z>> {
    let mut v: Vec<ExtReal<Z>> = vertices::<Z>()
        .iter()
        .map(|r| ExtReal::Finite(QuadIrr::from_rat(r)))
        .collect();
    v.insert(0, ExtReal::Infinity);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    type M = Mat2<i64>;
    type Q = Bqf<i64>;

    fn q(a: i64, b: i64, c: i64) -> Q {
        Q::from_i64(a, b, c)
    }

    fn fin(x: QuadIrr<i64>) -> ExtReal<i64> {
        ExtReal::Finite(x)
    }

    #[test]
    fn membership() {
        assert!(in_gamma15(&M::from_i64(1, 1, 0, 1)).unwrap());
        assert!(!in_gamma15(&M::from_i64(0, -1, 1, 0)).unwrap());
        assert!(in_gamma15(&M::from_i64(1, 0, 5, 1)).unwrap());
        assert!(in_gamma15(&M::from_i64(-1, 0, 5, -1)).unwrap());
        assert!(!in_gamma15(&M::from_i64(2, 1, 5, 3)).unwrap());
        assert!(in_gamma15(&M::from_i64(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn pairings_map_sides() {
        let v = vertices::<i64>();
        let t = pairing_t::<i64>();
        assert_eq!(t.apply_rat(None), None);
        assert_eq!(t.apply_rat(Some(&v[0])), Some(v[4]));
        let p2 = pairing_p2::<i64>();
        assert_eq!(p2.apply_rat(Some(&v[0])), Some(v[4]));
        assert_eq!(p2.apply_rat(Some(&v[1])), Some(v[3]));
        let p3 = pairing_p3::<i64>();
        assert_eq!(p3.apply_rat(Some(&v[1])), Some(v[3]));
        assert_eq!(p3.apply_rat(Some(&v[2])), Some(v[2]));
        for m in [t, p2, p3] {
            assert!(in_gamma15(&m).unwrap());
        }
    }

    #[test]
    fn cosets() {
        let reps = coset_reps::<i64>();
        assert_eq!(reps.len(), 12);
        assert!(reps.contains(&M::identity()));
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                assert_eq!(member(&a.mul(&b.adj())), i == j);
            }
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_function(&fin(QuadIrr::from_int(-3))).unwrap(), [1, 0, 0]);
        assert_eq!(h_function(&fin(QuadIrr::from_rat(&rat(3, 8)))).unwrap(), [0, 0, 1]);
        assert_eq!(h_function(&fin(QuadIrr::from_int(2))).unwrap(), [-1, 0, 0]);
        for v in vertex_list::<i64>() {
            assert!(matches!(h_function(&v), Err(Error::CuspEndpoint(_))));
        }
        let mut seen: Vec<HVec> = ARC_H.to_vec();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn intersection_examples() {
        assert!(intersects_f(&q(1, 0, -3)).unwrap());
        // (−1+√3)/2 ≈ 0.366 lies in (1/3, 2/5); (−1−√3)/2 < 0
        let (p, m) = q(2, 2, -1).roots().unwrap();
        assert_eq!(arc_index(&fin(p)).unwrap(), 2);
        assert_eq!(arc_index(&fin(m)).unwrap(), 0);
        assert!(intersects_f(&q(2, 2, -1)).unwrap());
        // roots (59 ± √5)/158 both in (1/3, 2/5)
        let f = q(79, -59, 11);
        let (p, m) = f.roots().unwrap();
        assert_eq!(arc_index(&fin(p)).unwrap(), 2);
        assert_eq!(arc_index(&fin(m)).unwrap(), 2);
        assert!(!intersects_f(&f).unwrap());
    }

    #[test]
    fn table_three() {
        let cases = [
            (q(1, 0, -3), 5, [3, 2, 0]),
            (q(2, 2, -1), 4, [2, -1, -1]),
            (q(-3, -11, 9), 9, [-5, -1, 1]),
        ];
        let mut total = [0; 3];
        for (f, len, h) in cases {
            let c = traverse(&f).unwrap();
            assert_eq!(c.len(), len);
            assert_eq!(c.homology, h);
            for i in 0..3 {
                total[i] += c.homology[i];
            }
        }
        assert_eq!(total, [0, 0, 0]);
    }

    #[test]
    fn traversal_closes() {
        let c = traverse(&q(-3, -11, 9)).unwrap();
        let prod = c.steps().iter().fold(M::identity(), |acc, s| acc.mul(s));
        assert_eq!(c.forms[0].act(&prod), c.forms[0]);
        for (f, s) in c.forms.iter().zip(c.steps()) {
            assert!(intersects_f(f).unwrap());
            assert!(member(&s));
        }
    }

    #[test]
    fn square_discriminant_rejected() {
        assert!(traverse(&q(1, 0, -1)).is_err());
        assert!(traverse(&q(0, 1, 1)).is_err());
    }

    #[test]
    fn point_reduction() {
        let f = q(3, -1, 2);
        let (p, d) = reduce_point_to_f(&f).unwrap();
        assert_eq!(p, f);
        assert!(d.eq_projective(&M::identity()));

        let shifted = f.act(&pairing_t::<i64>().adj());
        assert_eq!(point_coords(&shifted).0, rat(7, 6));
        let (p, d) = reduce_point_to_f(&shifted).unwrap();
        assert_eq!(p, f);
        assert!(member(&d));

        let g = q(2, -1, 1);
        assert_eq!(point_coords(&g), (rat(1, 4), rat(7, 16)));
        assert_eq!(reduce_point_to_f(&g).unwrap().0, g);
    }

    #[test]
    fn figure_two() {
        let c = traverse(&q(2, 2, -1)).unwrap();
        assert_eq!(winding(&q(2, -1, 1), &c).unwrap(), rat(1, 1));
        let z2 = q(6, -1, 1);
        assert_eq!(point_coords(&z2), (rat(1, 12), rat(23, 144)));
        assert!(in_f(&z2));
        assert_eq!(winding(&z2, &c).unwrap(), rat(2, 1));
        let empty = GeodesicCycle { disc: 12, forms: vec![], homology: [0; 3] };
        assert_eq!(winding(&z2, &empty).unwrap(), rat(0, 1));
        assert_eq!(winding(&q(1, -3, 3), &c), Err(Error::PointNotReduced));
    }

    #[test]
    fn orbit_sizes() {
        for cl in crate::bqf::classes(&-23i64).unwrap() {
            let pts = class_orbit_points(&cl).unwrap();
            assert_eq!(pts.len(), 12);
            for (a, b) in &pts {
                assert!(in_f(a) && in_f(b));
            }
        }
        let c4 = &crate::bqf::classes(&-4i64).unwrap()[0];
        assert_eq!(class_orbit_points(c4).unwrap().len(), 6);
        let c3 = &crate::bqf::classes(&-3i64).unwrap()[0];
        assert_eq!(class_orbit_points(c3).unwrap().len(), 4);
    }
}
