// SPDX-License-Identifier: Apache-2.0

use num_integer::Roots;
use num_traits::Signed;
use rayon::prelude::*;

use super::lattice11::Lattice11;
use super::quad::RealTol;
use super::wstar::w_star;
use crate::exact::{rat_to_f64, Rat, SymT};
use crate::num::Real;
use crate::{Error, Int, Result};

/// Caller-certified envelope `|r(T″)·ρ(T′)| ≤ scale·(1 + Δ(T′v))^power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffBound<F> {
    pub scale: F,
    pub power: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaOptions<Z: Int, F> {
    /// `T′` runs over `(1/level)·Sym₂(ℤ)`.
    pub level: u32,
    /// Index normalization applied to the whole sum.
    pub norm: Rat<Z>,
    pub tol: F,
    pub bound: CoeffBound<F>,
    /// Fixed truncation radius; chosen from the tail certificate when `None`.
    pub delta_max: Option<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaResult<F> {
    pub value: F,
    pub err: F,
    pub delta_max: F,
    pub terms: usize,
}

fn to_f<Z: Int, F: Real>(r: &Rat<Z>) -> F {
    F::lit(rat_to_f64(r))
}

/// `tr(T′v)` and `det(T′v)` for `v = (v11, v12, v22)`.
fn trace_det<F: Real>(t: [F; 3], v: [F; 3]) -> (F, F) {
    let two = F::lit(2.0);
    let tr = t[0] * v[0] + two * t[1] * v[1] + t[2] * v[2];
    let det = (t[0] * t[2] - t[1] * t[1]) * (v[0] * v[2] - v[1] * v[1]);
    (tr, det)
}

fn sym_f<Z: Int, F: Real>(t: &SymT<Z>) -> [F; 3] {
    [to_f(&t.t1), to_f(&t.t0), to_f(&t.t2)]
}

/// One summand `r·ρ·W*(tr(T′v), 4|det(T′v)|)`.
pub fn beta_term<Z: Int, F: Real>(r: i64, rho: i64, t_prime: &SymT<Z>, v: [F; 3], tol: F) -> Result<RealTol<F>> {
    let c = F::lit((r * rho) as f64);
    if c == F::zero() {
        return Ok(RealTol { value: F::zero(), err: F::zero() });
    }
    let (x1, det) = trace_det(sym_f(t_prime), v);
    let w = w_star(x1, F::lit(4.0) * det.abs(), tol / c.abs())?;
    Ok(RealTol { value: c * w.value, err: c.abs() * w.err })
}

/// `β(T, v) = norm · Σ r(T″)·ρ(T′)·W*(tr(T′v), 4|det(T′v)|)` over
/// `T = T′ + T″` with `T′` indefinite and `T″` positive definite.
///
/// Terms with `Δ(T′v) ≥ delta_max` are dropped; their total is bounded by
/// `count(R)·bound(R)·(√(R+1)/4)·e^{−4π(R−Λ)}/(4π(R−Λ))` summed over unit
/// shells, where `Λ = λ_max(Tv)` and `count(R) = (2NKR+1)²(4NKR+1)` with
/// `K = max diag(v⁻¹)`.
pub fn beta_coeff<Z: Int, F: Real>(
    t: &SymT<Z>,
    v: [F; 3],
    r: impl Fn(&SymT<Z>) -> Result<i64> + Sync,
    lat: &Lattice11<Z>,
    opts: &BetaOptions<Z, F>,
) -> Result<BetaResult<F>> {
    let zero = F::zero();
    let det_v = v[0] * v[2] - v[1] * v[1];
    if !(v[0] > zero && det_v > zero) {
        return Err(Error::NotPositiveDefinite);
    }
    if !(opts.tol > zero) || opts.level == 0 {
        return Err(Error::Domain("beta needs tol > 0 and level ≥ 1".into()));
    }
    let norm_abs = to_f::<Z, F>(&opts.norm.abs());
    let (tr, det) = trace_det(sym_f(t), v);
    let four = F::lit(4.0);
    let big_lambda = (tr + (tr * tr - four * det).max(zero).sqrt()) / F::lit(2.0);
    if big_lambda <= zero {
        return Ok(BetaResult { value: zero, err: zero, delta_max: zero, terms: 0 });
    }
    let k = (v[2] / det_v).max(v[0] / det_v);
    let n = F::lit(f64::from(opts.level));
    let one = F::one();
    let two = F::lit(2.0);
    let four_pi = four * F::PI();
    let count = |rr: F| {
        let s = n * k * rr;
        (two * s + one).powi(2) * (four * s + one)
    };
    let tail = |r0: F| {
        let mut acc = zero;
        for j in 0..200 {
            let rr = r0 + F::lit(f64::from(j));
            let gap = rr - big_lambda;
            let w = (rr + one).sqrt() / four * (-four_pi * gap).exp() / (four_pi * gap);
            let term = count(rr + one) * opts.bound.scale * (one + rr + one).powf(opts.bound.power) * w;
            acc = acc + term;
            if term <= acc * F::epsilon() {
                break;
            }
        }
        acc
    };
    let half_tol = opts.tol / two;
    let delta_max = match opts.delta_max {
        Some(d) if d > big_lambda => d,
        Some(_) => return Err(Error::Domain("delta_max must exceed λ_max(Tv)".into())),
        None => {
            let mut d = big_lambda + F::lit(0.25);
            while norm_abs * tail(d) > half_tol {
                d = d + F::lit(0.25);
            }
            d
        }
    };

    let b = (n * k * delta_max).to_i64().ok_or(Error::Domain("box overflow".into()))? + 1;
    let tf = sym_f::<Z, F>(t);
    let hi1 = (n * tf[0]).ceil().to_i64().unwrap_or(b).min(b);
    let hi2 = (n * tf[2]).ceil().to_i64().unwrap_or(b).min(b);
    let level = Z::from_small(i64::from(opts.level));
    let slack = F::lit(1e-9) * (one + tf[0].abs() + tf[1].abs() + tf[2].abs()).powi(2);
    let pdisc = lat.gram().disc();
    let pkey = match (pdisc.numer().to_i128(), pdisc.denom().to_i128()) {
        (Some(a), Some(b)) => a.checked_mul(b),
        _ => None,
    };
    let rows: Vec<Result<Vec<(SymT<Z>, i64, i64)>>> = (-b..=hi1)
        .into_par_iter()
        .map(|s1| {
            let mut found = Vec::new();
            let f1 = F::lit(s1 as f64) / n;
            for s2 in -b..=hi2 {
                let f2 = F::lit(s2 as f64) / n;
                for s0 in -2 * b..=2 * b {
                    let f0 = F::lit(s0 as f64) / (two * n);
                    let (x1, dp) = trace_det([f1, f0, f2], v);
                    if dp >= zero || (x1 * x1 - four * dp).sqrt() >= delta_max {
                        continue;
                    }
                    if let Some(key) = pkey {
                        let dd = i128::from(s0) * i128::from(s0) - 4 * i128::from(s1) * i128::from(s2);
                        if let Some(m) = dd.checked_mul(key) {
                            if m < 0 || m.sqrt() * m.sqrt() != m {
                                continue;
                            }
                        }
                    }
                    let (u1, u0, u2) = (tf[0] - f1, tf[1] - f0, tf[2] - f2);
                    if u1 * u2 - u0 * u0 < -slack {
                        continue;
                    }
                    let tp = SymT::new(
                        Rat::new(Z::from_small(s1), level.clone()),
                        Rat::new(Z::from_small(s0), level.clone() * Z::from_small(2)),
                        Rat::new(Z::from_small(s2), level.clone()),
                    );
                    let tpp = t.sub(&tp);
                    if !tp.is_indefinite() || !tpp.is_positive_definite() {
                        continue;
                    }
                    let rho = lat.rho(&tp, &Default::default())?;
                    if rho == 0 {
                        continue;
                    }
                    let rv = r(&tpp)?;
                    if rv == 0 {
                        continue;
                    }
                    let gap = (x1 * x1 - four * dp).sqrt();
                    let c = F::lit((rv * rho).unsigned_abs() as f64);
                    if c > opts.bound.scale * (one + gap).powf(opts.bound.power) {
                        return Err(Error::BoundViolated(format!(
                            "|r·ρ| = {c} at T′ = {tp} exceeds the coefficient bound"
                        )));
                    }
                    found.push((tp, rv, rho));
                }
            }
            Ok(found)
        })
        .collect();
    let mut found = Vec::new();
    for row in rows {
        found.extend(row?);
    }
    let per = half_tol / (F::lit(found.len() as f64 + 1.0) * norm_abs.max(F::min_positive_value()));
    let mut value = zero;
    let mut err = zero;
    for (tp, rv, rho) in &found {
        let term = beta_term(*rv, *rho, tp, v, per)?;
        value = value + term.value;
        err = err + term.err;
    }
    let norm = to_f::<Z, F>(&opts.norm);
    Ok(BetaResult {
        value: norm * value,
        err: norm_abs * (err + tail(delta_max)),
        delta_max,
        terms: found.len(),
    })
}
