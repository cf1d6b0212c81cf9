// SPDX-License-Identifier: Apache-2.0

//! Multiplicities `m(T, q)`, the weighted zero-cycle `c(T)`, and the lattice
//! counts `r_T` and `N_T`.

use serde::{Deserialize, Serialize};

use crate::bqf::{classes, double_inverse, kernel3, restrict, Bqf, Kind};
use crate::exact::{Mat2, Rat, SymT};
use crate::gamma15::{class_orbit_points, OrientedPoint};
use crate::num::int;
use crate::{Error, Int, Result};

/// `r⁺_qp(t) = #{h ∈ M₂(ℤ) : t = qp·h, det h > 0}`.
pub fn rep_count_pos<Z: Int>(qp: &Bqf<Z>, t: &Bqf<Z>) -> Result<u64> {
    let (qp, _) = qp.reduce_posdef()?;
    let (t, _) = t.reduce_posdef()?;
    let firsts = qp.represent(&t.a);
    let seconds = qp.represent(&t.c);
    let mut count = 0u64;
    for v in &firsts {
        for w in &seconds {
            let h = Mat2::new(v.0.clone(), w.0.clone(), v.1.clone(), w.1.clone());
            if h.det().is_positive() && qp.act(&h) == t {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `m(T, q)` through the class-group identity `m(t, q) = r⁺_{−2[q/g]}(t)`.
///
/// Zero when the discriminants differ or `q` is not definite.
pub fn m_coeff<Z: Int>(t: &SymT<Z>, q: &Bqf<Z>) -> Result<u64> {
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let tf = t.to_form()?;
    if q.disc() != tf.disc() {
        return Ok(0);
    }
    let q = match q.kind() {
        Kind::PositiveDefinite => q.clone(),
        Kind::NegativeDefinite => q.tilde(),
        _ => return Ok(0),
    };
    let q0 = q.primitive_part();
    let rep = double_inverse(&q0)?.rep;
    rep_count_pos(&rep, &tf)
}

/// One weighted oriented point of a zero-cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CyclePoint<Z: Int> {
    #[serde(flatten)]
    pub point: OrientedPoint<Z>,
    pub weight: u64,
}

/// `c(T) = Σ m(T, q) x(q)` over `q ∈ Q_d/Γ′`, points reduced into `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ZeroCycle<Z: Int> {
    #[serde(with = "crate::num::int_serde")]
    pub disc: Z,
    pub points: Vec<CyclePoint<Z>>,
}

impl<Z: Int> ZeroCycle<Z> {
    /// Signed degree `Σ sign · weight`.
    pub fn degree(&self) -> i64 {
        self.points
            .iter()
            .map(|p| p.point.sign as i64 * p.weight as i64)
            .sum()
    }
}

/// The zero-cycle of a positive definite half-integral `T`.
///
/// Each positive point `z_q` is followed by its negatively oriented partner
/// `x(q̃)`, stored as the negative definite form `−(a, −b, c)`.
pub fn zero_cycle<Z: Int>(t: &SymT<Z>) -> Result<ZeroCycle<Z>> {
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let d = t.to_form()?.disc();
    let mut points = Vec::new();
    for class in classes(&d)? {
        let m = m_coeff(t, &class.rep)?;
        if m == 0 {
            continue;
        }
        for (q, partner) in class_orbit_points(&class)? {
            points.push(CyclePoint {
                point: OrientedPoint { form: q, sign: 1 },
                weight: m,
            });
            points.push(CyclePoint {
                point: OrientedPoint {
                    form: partner.neg(),
                    sign: -1,
                },
                weight: m,
            });
        }
    }
    Ok(ZeroCycle { disc: d, points })
}

/// `𝔏_T = {(u, v, w) ∈ ℤ³ : ru + mv + nw = 0}` with the form `u² − vw`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLT<Z> {
    pub n: Z,
    pub r: Z,
    pub m: Z,
    pub basis: [[Z; 3]; 2],
    pub gram: Bqf<Z>,
}

fn quad_lt<Z: Int>(v: &[Z; 3]) -> Z {
    v[0].clone() * v[0].clone() - v[1].clone() * v[2].clone()
}

pub fn lattice_lt<Z: Int>(n: &Z, r: &Z, m: &Z) -> Result<LatticeLT<Z>> {
    if !n.gcd(r).gcd(m).is_one() {
        return Err(Error::NotPrimitive(format!("{n},{r},{m}")));
    }
    let disc = r.clone() * r.clone() - int::<Z>(4) * n.clone() * m.clone();
    if !disc.is_negative() {
        return Err(Error::Domain(format!("r² − 4nm = {disc} must be negative")));
    }
    let [b1, b2] = kernel3(&[r.clone(), m.clone(), n.clone()])?;
    let gram = restrict(quad_lt, &b1, &b2);
    Ok(LatticeLT {
        n: n.clone(),
        r: r.clone(),
        m: m.clone(),
        basis: [b1, b2],
        gram,
    })
}

impl<Z: Int> LatticeLT<Z> {
    pub fn disc(&self) -> Z {
        self.r.clone() * self.r.clone() - int::<Z>(4) * self.n.clone() * self.m.clone()
    }

    /// Lattice vectors with `u² − vw = a`.
    pub fn vectors_of_norm(&self, a: &Z) -> Result<Vec<[Z; 3]>> {
        let (red, g) = self.gram.reduce_posdef()?;
        let [b1, b2] = &self.basis;
        let comb = |x: &Z, y: &Z| -> [Z; 3] {
            [0, 1, 2].map(|i| x.clone() * b1[i].clone() + y.clone() * b2[i].clone())
        };
        Ok(red
            .represent(a)
            .into_iter()
            .map(|(x, y)| {
                let xo = g.a.clone() * x.clone() + g.b.clone() * y.clone();
                let yo = g.c.clone() * x + g.d.clone() * y;
                comb(&xo, &yo)
            })
            .collect())
    }
}

/// `r_T(A) = #{X ∈ 𝔏_T : u² − vw = A}`.
pub fn count_rt<Z: Int>(lat: &LatticeLT<Z>, a: &Z) -> Result<u64> {
    Ok(lat.vectors_of_norm(a)?.len() as u64)
}

/// `N_T(t, d)` together with the bound `r_T((t² − Dd)/4)` when defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NtCount {
    pub count: u64,
    pub r_t: Option<u64>,
}

/// `N_T(t, d) = #{σ ∈ Sym₂(ℤ) : σ₁m − σ₀r + σ₂n = t/2, σ₀² − σ₁σ₂ = d/4}`,
/// with `2σ₀ ∈ ℤ`.
///
/// Enumerated through the injection
/// `σ ↦ (mσ₁ − nσ₂, 2nσ₀ − rσ₁, rσ₂ − 2mσ₀)` into norm-`(t² − Dd)/4`
/// vectors of `𝔏_T`.
pub fn count_nt<Z: Int>(lat: &LatticeLT<Z>, t: &Z, d: &Z) -> Result<NtCount> {
    let dd = lat.disc();
    let four = int::<Z>(4);
    let num = t.clone() * t.clone() - dd.clone() * d.clone();
    if !num.is_multiple_of(&four) {
        return Ok(NtCount { count: 0, r_t: None });
    }
    let a = num / four.clone();
    let vecs = lat.vectors_of_norm(&a)?;
    let r_t = vecs.len() as u64;
    let (n, r, m) = (&lat.n, &lat.r, &lat.m);
    let two = int::<Z>(2);
    // rows of (σ₁, s₀, σ₂) ↦ (u, v, t)
    let mat = [
        [m.clone(), Z::zero(), -n.clone()],
        [-r.clone(), n.clone(), Z::zero()],
        [two.clone() * m.clone(), -r.clone(), two * n.clone()],
    ];
    let det = crate::bqf::det3([&mat[0], &mat[1], &mat[2]]);
    if det.is_zero() {
        return Err(Error::InvalidLattice("degenerate σ system".into()));
    }
    let mut count = 0u64;
    for x in vecs {
        let rhs = [x[0].clone(), x[1].clone(), t.clone()];
        let sol: Vec<Rat<Z>> = (0..3)
            .map(|j| {
                let mut mj = mat.clone();
                for i in 0..3 {
                    mj[i][j] = rhs[i].clone();
                }
                Rat::new(crate::bqf::det3([&mj[0], &mj[1], &mj[2]]), det.clone())
            })
            .collect();
        if !sol.iter().all(Rat::is_integer) {
            continue;
        }
        let (s1, s0, s2) = (
            sol[0].to_integer(),
            sol[1].to_integer(),
            sol[2].to_integer(),
        );
        let w = r.clone() * s2.clone() - m.clone() * s0.clone();
        let quad = s0.clone() * s0 - four.clone() * s1 * s2;
        if w == x[2] && quad == *d {
            count += 1;
        }
    }
    Ok(NtCount {
        count,
        r_t: Some(r_t),
    })
}
