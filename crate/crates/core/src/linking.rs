// SPDX-License-Identifier: Apache-2.0

//! Linking coefficients `ι_{L′}(T)` and `ι_L(T)` of geodesic cycles with the
//! zero-cycles `c(T)`, and tables of them over reduced `T`.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bqf::{Bqf, FormClass};
use crate::cycles::zero_cycle;
use crate::exact::{rat_string, rat_to_f64, Rat, SymT};
use crate::gamma15::{class_orbit_points, traverse, winding, GeodesicCycle};
use crate::num::int;
use crate::{Error, Int, Result};

/// A finite set of closed geodesics on `Γ′\H`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CycleSet<Z: Int> {
    pub cycles: Vec<GeodesicCycle<Z>>,
}

impl<Z: Int> CycleSet<Z> {
    pub fn new(cycles: Vec<GeodesicCycle<Z>>) -> Self {
        CycleSet { cycles }
    }

    pub fn from_forms(forms: &[Bqf<Z>]) -> Result<Self> {
        Ok(CycleSet {
            cycles: forms.iter().map(traverse).collect::<Result<_>>()?,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    fn winding_total(&self, p: &Bqf<Z>) -> Result<Rat<Z>> {
        self.cycles
            .iter()
            .try_fold(Rat::from_integer(Z::zero()), |acc, c| Ok(acc + winding(p, c)?))
    }
}

/// `Σ_{q ∈ C/Γ′} w(x(q); c) − w(x(−q̃); c)`.
pub fn class_winding_sum<Z: Int>(class: &FormClass<Z>, cyc: &GeodesicCycle<Z>) -> Result<Rat<Z>> {
    let mut s = Rat::from_integer(Z::zero());
    for (q, partner) in class_orbit_points(class)? {
        s = s + winding(&q, cyc)? - winding(&partner, cyc)?;
    }
    Ok(s)
}

/// `ι_{L′}(T)`: zero off positive definite `T`.
pub fn iota_prime<Z: Int>(t: &SymT<Z>, cs: &CycleSet<Z>) -> Result<Rat<Z>> {
    if !t.is_positive_definite() {
        return Ok(Rat::from_integer(Z::zero()));
    }
    if !t.is_half_integral() {
        return Err(Error::NotHalfIntegral);
    }
    let mut total = Rat::from_integer(Z::zero());
    if cs.is_empty() {
        return Ok(total);
    }
    for p in zero_cycle(t)?.points {
        let pos = if p.point.sign < 0 { p.point.form.neg() } else { p.point.form };
        let w = cs.winding_total(&pos)?;
        let weight = Rat::from_integer(int::<Z>(p.weight as i64 * p.point.sign as i64));
        total = total + weight * w;
    }
    Ok(total)
}

/// `ι_{L′}(T)` for each cycle separately.
pub fn iota_prime_per_cycle<Z: Int>(t: &SymT<Z>, cs: &CycleSet<Z>) -> Result<Vec<Rat<Z>>> {
    cs.cycles
        .iter()
        .map(|c| iota_prime(t, &CycleSet::new(vec![c.clone()])))
        .collect()
}

/// `(n, m)` with `T − (n² nm; nm m²)` positive definite.
pub fn theta_shifts<Z: Int>(t: &SymT<Z>) -> Vec<(Z, Z)> {
    let bound = |x: &Rat<Z>| {
        if x.is_positive() {
            x.floor().to_integer().sqrt()
        } else {
            Z::zero()
        }
    };
    let (bn, bm) = (bound(&t.t1), bound(&t.t2));
    let mut out = Vec::new();
    let mut n = -bn.clone();
    while n <= bn {
        let mut m = -bm.clone();
        while m <= bm {
            if shifted(t, &n, &m).is_positive_definite() {
                out.push((n.clone(), m.clone()));
            }
            m = m + Z::one();
        }
        n = n + Z::one();
    }
    out
}

fn shifted<Z: Int>(t: &SymT<Z>, n: &Z, m: &Z) -> SymT<Z> {
    let r = |z: Z| Rat::from_integer(z);
    t.sub(&SymT::new(
        r(n.clone() * n.clone()),
        r(n.clone() * m.clone()),
        r(m.clone() * m.clone()),
    ))
}

/// `ι_L(T) = Σ_{n,m} ι_{L′}(T − (n² nm; nm m²))`.
pub fn iota_full<Z: Int>(t: &SymT<Z>, cs: &CycleSet<Z>) -> Result<Rat<Z>> {
    let mut total = Rat::from_integer(Z::zero());
    for (n, m) in theta_shifts(t) {
        total = total + iota_prime(&shifted(t, &n, &m), cs)?;
    }
    Ok(total)
}

/// One nonzero row of a coefficient table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CoeffRow<Z: Int> {
    #[serde(rename = "T")]
    pub t: SymT<Z>,
    #[serde(with = "rat_string")]
    pub det: Rat<Z>,
    #[serde(with = "rat_string")]
    pub value: Rat<Z>,
    /// `det T` is a rational square; such values depend on the chosen surface.
    pub surface_dependent: bool,
}

/// Reduced half-integral `T` with `t0 ≥ 0` and `0 < det T < max_det`, in
/// `(det, t1, t0, t2)` order.
pub fn reduced_range<Z: Int>(max_det: &Rat<Z>) -> Vec<SymT<Z>> {
    let mut out = Vec::new();
    if !max_det.is_positive() {
        return out;
    }
    let four = Rat::from_integer(int::<Z>(4));
    let three = Rat::from_integer(int::<Z>(3));
    let mut t1 = Z::one();
    // det ≥ 3t1²/4
    while three.clone() * Rat::from_integer(t1.clone() * t1.clone()) < four.clone() * max_det.clone() {
        let mut b = Z::zero();
        while b <= t1 {
            let mut t2 = t1.clone();
            loop {
                let t = SymT::new(
                    Rat::from_integer(t1.clone()),
                    Rat::new(b.clone(), int(2)),
                    Rat::from_integer(t2.clone()),
                );
                if t.det() >= *max_det {
                    break;
                }
                if t.is_positive_definite() {
                    out.push(t);
                }
                t2 = t2 + Z::one();
            }
            b = b + Z::one();
        }
        t1 = t1 + Z::one();
    }
    out.sort_by(|x, y| {
        (x.det(), &x.t1, &x.t0, &x.t2).cmp(&(y.det(), &y.t1, &y.t0, &y.t2))
    });
    out
}

/// Nonzero `ι_L(T)` over reduced `T` with `det T < max_det`.
pub fn series_table<Z: Int>(
    max_det: &Rat<Z>,
    cs: &CycleSet<Z>,
    nonsquare_only: bool,
) -> Result<Vec<CoeffRow<Z>>> {
    if cs.is_empty() {
        return Ok(Vec::new());
    }
    let ts: Vec<SymT<Z>> = reduced_range(max_det)
        .into_iter()
        .filter(|t| !(nonsquare_only && t.det_is_square()))
        .collect();
    let values: Vec<Result<Rat<Z>>> = ts.par_iter().map(|t| iota_full(t, cs)).collect();
    let mut rows = Vec::new();
    for (t, v) in ts.into_iter().zip(values) {
        let value = v?;
        if !value.is_zero() {
            rows.push(CoeffRow {
                det: t.det(),
                surface_dependent: t.det_is_square(),
                t,
                value,
            });
        }
    }
    Ok(rows)
}

/// Largest `|ι_L(T)| / det(T)^{3/2}` over a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Growth<Z: Int> {
    pub max_ratio: f64,
    pub argmax: Option<SymT<Z>>,
    pub rows: Vec<(SymT<Z>, f64)>,
}

pub fn growth_ratio<Z: Int>(value: &Rat<Z>, det: &Rat<Z>) -> f64 {
    rat_to_f64(value).abs() / rat_to_f64(det).powf(1.5)
}

pub fn growth_check<Z: Int>(
    max_det: &Rat<Z>,
    cs: &CycleSet<Z>,
    nonsquare_only: bool,
) -> Result<Growth<Z>> {
    let table = series_table(max_det, cs, nonsquare_only)?;
    let rows: Vec<(SymT<Z>, f64)> = table
        .iter()
        .map(|r| (r.t.clone(), growth_ratio(&r.value, &r.det)))
        .collect();
    let best = rows
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1));
    Ok(Growth {
        max_ratio: best.map_or(0.0, |b| b.1),
        argmax: best.map(|b| b.0.clone()),
        rows,
    })
}
