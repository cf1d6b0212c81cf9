// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{parse_rat, rat_sign, rat_sqrt, rat_to_f64, split_fields, Mat2, Rat, SymT};
use crate::num::{exact_sqrt, from_bigint, to_bigint};
use crate::{Error, Int, Result};

/// Rational column vector `(x, y)`.
pub type Vec2<Z> = [Rat<Z>; 2];

type Q = Rat<BigInt>;
type V = Vec2<BigInt>;

/// `ε(X) = sgn det(X₁ X₂)`.
pub fn epsilon_sign<Z: Int>(x1: &Vec2<Z>, x2: &Vec2<Z>) -> i32 {
    rat_sign(&(x1[0].clone() * x2[1].clone() - x1[1].clone() * x2[0].clone()))
}

/// An anisotropic binary lattice `(ℤ², P)` of signature (1,1), a coset
/// `ℤ² + η` for each of the two columns, and a hyperbolic automorph `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice11<Z: Int> {
    gram: SymT<Z>,
    shift: [Vec2<Z>; 2],
    automorph: Mat2<Z>,
    core: Core,
}

/// Placement of the fundamental window for `⟨γ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RhoOptions {
    /// Offset of the window start, in units of `log|ℓ₊/ℓ₋|`.
    pub window_shift: f64,
}

const MAX_ROWS: i64 = 50_000_000;

fn wide<Z: Int>(r: &Rat<Z>) -> Q {
    Q::new(to_bigint(r.numer()), to_bigint(r.denom()))
}

fn wide_vec<Z: Int>(v: &Vec2<Z>) -> V {
    [wide(&v[0]), wide(&v[1])]
}

fn narrow<Z: Int>(v: &V) -> Result<Vec2<Z>> {
    let one = |r: &Q| -> Result<Rat<Z>> {
        match (from_bigint(r.numer()), from_bigint(r.denom())) {
            (Some(n), Some(d)) => Ok(Rat::new(n, d)),
            _ => Err(Error::Domain(format!("{r} overflows the scalar type"))),
        }
    };
    Ok([one(&v[0])?, one(&v[1])?])
}

fn apply(g: &Mat2<BigInt>, x: &V) -> V {
    let r = |z: &BigInt| Q::from_integer(z.clone());
    [
        r(&g.a) * x[0].clone() + r(&g.b) * x[1].clone(),
        r(&g.c) * x[0].clone() + r(&g.d) * x[1].clone(),
    ]
}

fn is_integral(x: &V) -> bool {
    x[0].is_integer() && x[1].is_integer()
}

fn sub(x: &V, y: &V) -> V {
    [x[0].clone() - y[0].clone(), x[1].clone() - y[1].clone()]
}

/// Parse `"x,y"`.
pub fn parse_vec2<Z: Int>(s: &str) -> Result<Vec2<Z>> {
    let p = split_fields(s, 2, "vector")?;
    Ok([parse_rat(p[0])?, parse_rat(p[1])?])
}

/// Arbitrary-precision copy used for enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Core {
    p: SymT<BigInt>,
    eta: [V; 2],
    g: Mat2<BigInt>,
}

impl Core {
    fn bilinear(&self, x: &V, y: &V) -> Q {
        let p = &self.p;
        p.t1.clone() * x[0].clone() * y[0].clone()
            + p.t0.clone() * (x[0].clone() * y[1].clone() + x[1].clone() * y[0].clone())
            + p.t2.clone() * x[1].clone() * y[1].clone()
    }

    fn norm(&self, x: &V) -> Q {
        self.bilinear(x, x)
    }

    fn period(&self) -> f64 {
        let tr = self.g.trace().to_f64().unwrap_or(f64::INFINITY);
        let lam = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
        2.0 * lam.ln()
    }

    fn tau(&self, x: &V) -> f64 {
        let p = &self.p;
        let p11 = rat_to_f64(&p.t1);
        let s = 2.0 * rat_to_f64(&((p.t1.clone() * x[0].clone() + p.t0.clone() * x[1].clone()) / p.t1.clone()));
        let dy = -2.0 * rat_to_f64(&-p.det()).sqrt() / p11 * rat_to_f64(&x[1]);
        let big = (s.abs() + dy.abs()) / 2.0;
        let small = (rat_to_f64(&self.norm(x)) / p11).abs() / big;
        if s * dy >= 0.0 {
            big.ln() - small.ln()
        } else {
            small.ln() - big.ln()
        }
    }

    /// Vectors `X ∈ ℤ² + η₁` with `ᵀXPX = t` and `tau(X)` in `[lo, hi]`.
    fn first_columns(&self, t: &Q, lo: f64, hi: f64) -> Result<Vec<(f64, V)>> {
        let p = &self.p;
        let p11 = rat_to_f64(&p.t1);
        let nd = -p.det();
        let root = rat_to_f64(&nd).sqrt();
        let scale = (rat_to_f64(t) / p11).abs().sqrt();
        let ymax = scale * ((hi / 2.0).exp() + (-lo / 2.0).exp()) * p11.abs() / (2.0 * root) + 1.0;
        if !ymax.is_finite() {
            return Err(Error::Domain("enumeration bound overflow".into()));
        }
        let eta = &self.eta[0];
        let ey = rat_to_f64(&eta[1]);
        let k_lo = (-ymax - ey).floor() as i64;
        let k_hi = (ymax - ey).ceil() as i64;
        if k_hi - k_lo > MAX_ROWS {
            return Err(Error::Domain(format!("enumeration needs {} rows", k_hi - k_lo)));
        }
        let base = p.t1.clone() * t.clone();
        let mut out = Vec::new();
        for k in k_lo..=k_hi {
            let y = eta[1].clone() + Q::from_integer(k.into());
            let Some(r) = rat_sqrt(&(nd.clone() * y.clone() * y.clone() + base.clone())) else {
                continue;
            };
            let py = -(p.t0.clone() * y.clone());
            let roots = if r.is_zero() { vec![py] } else { vec![py.clone() + r.clone(), py - r] };
            for num in roots {
                let x = num / p.t1.clone();
                if !(x.clone() - eta[0].clone()).is_integer() {
                    continue;
                }
                let v = [x, y.clone()];
                let tau = self.tau(&v);
                if (lo..=hi).contains(&tau) {
                    out.push((tau, v));
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(out)
    }

    /// One representative per `⟨γ⟩`-orbit from a window spanning under two periods.
    fn orbit_reps(&self, cands: Vec<(f64, V)>) -> Vec<V> {
        let powers: Vec<Mat2<BigInt>> = [-2, -1, 1, 2].iter().map(|&k| self.g.pow(k)).collect();
        let mut seen: HashSet<V> = HashSet::new();
        let mut reps = Vec::new();
        for (_, x) in cands {
            if powers.iter().any(|g| seen.contains(&apply(g, &x))) {
                continue;
            }
            seen.insert(x.clone());
            reps.push(x);
        }
        reps
    }

    /// All `X₂ ∈ ℤ² + η₂` with `ᵀX₁PX₂ = t0` and `ᵀX₂PX₂ = t2`: a line meets a conic.
    fn second_columns(&self, x1: &V, t0: &Q, t2: &Q) -> Vec<V> {
        let p = &self.p;
        let w = [
            p.t1.clone() * x1[0].clone() + p.t0.clone() * x1[1].clone(),
            p.t0.clone() * x1[0].clone() + p.t2.clone() * x1[1].clone(),
        ];
        let ww = w[0].clone() * w[0].clone() + w[1].clone() * w[1].clone();
        if ww.is_zero() {
            return Vec::new();
        }
        let f = t0.clone() / ww;
        let x0 = [w[0].clone() * f.clone(), w[1].clone() * f];
        let v = [-w[1].clone(), w[0].clone()];
        let a = self.norm(&v);
        let b = self.bilinear(&x0, &v);
        let c = self.norm(&x0) - t2.clone();
        let disc = b.clone() * b.clone() - a.clone() * c;
        let Some(r) = rat_sqrt(&disc) else {
            return Vec::new();
        };
        let ss = if r.is_zero() { vec![-b] } else { vec![-b.clone() + r.clone(), -b - r] };
        ss.into_iter()
            .map(|s| {
                let s = s / a.clone();
                [x0[0].clone() + s.clone() * v[0].clone(), x0[1].clone() + s * v[1].clone()]
            })
            .filter(|x2| is_integral(&sub(x2, &self.eta[1])))
            .collect()
    }

    fn rho(&self, t: &SymT<BigInt>, opts: &RhoOptions) -> Result<i64> {
        if !t.is_indefinite() || t.t1.is_zero() || rat_sqrt(&(t.det() / self.p.det())).is_none() {
            return Ok(0);
        }
        let period = self.period();
        let margin = period / 8.0;
        let start = -period / 2.0 + opts.window_shift;
        let cands = self.first_columns(&t.t1, start - margin, start + period + margin)?;
        let mut total = 0i64;
        for x1 in self.orbit_reps(cands) {
            for x2 in self.second_columns(&x1, &t.t0, &t.t2) {
                total += i64::from(epsilon_sign(&x1, &x2));
            }
        }
        Ok(total)
    }
}

fn wide_sym<Z: Int>(t: &SymT<Z>) -> SymT<BigInt> {
    SymT::new(wide(&t.t1), wide(&t.t0), wide(&t.t2))
}

fn wide_mat<Z: Int>(g: &Mat2<Z>) -> Mat2<BigInt> {
    Mat2::new(to_bigint(&g.a), to_bigint(&g.b), to_bigint(&g.c), to_bigint(&g.d))
}

impl<Z: Int> Lattice11<Z> {
    /// Checks `det P < 0`, `−det P ∉ ℚ²`, `det γ = 1`, `tr γ > 2`,
    /// `γᵀPγ = P` and `γη ≡ η mod ℤ²`.
    pub fn new(gram: SymT<Z>, shift: [Vec2<Z>; 2], automorph: Mat2<Z>) -> Result<Self> {
        let core = Core {
            p: wide_sym(&gram),
            eta: [wide_vec(&shift[0]), wide_vec(&shift[1])],
            g: wide_mat(&automorph),
        };
        if !core.p.is_indefinite() {
            return Err(Error::NotIndefinite(gram.to_string()));
        }
        if rat_sqrt(&-core.p.det()).is_some() {
            return Err(Error::InvalidLattice("gram matrix is isotropic over ℚ".into()));
        }
        let det = core.g.det();
        if !det.is_one() {
            return Err(Error::BadDeterminant {
                expected: "1".into(),
                got: det.to_string(),
            });
        }
        if core.g.trace() <= BigInt::from(2) {
            return Err(Error::InvalidLattice("automorph is not hyperbolic with trace > 2".into()));
        }
        if core.p.congruent(&core.g) != core.p {
            return Err(Error::InvalidLattice("automorph does not preserve the gram matrix".into()));
        }
        for eta in &core.eta {
            if !is_integral(&sub(&apply(&core.g, eta), eta)) {
                return Err(Error::InvalidLattice("automorph does not preserve the shift".into()));
            }
        }
        Ok(Lattice11 { gram, shift, automorph, core })
    }

    /// Unshifted lattice with automorph found by [`Lattice11::find_automorph`].
    pub fn with_fundamental_automorph(gram: SymT<Z>, max_u: u64) -> Result<Self> {
        let g = Self::find_automorph(&gram, max_u)?;
        let zero = [Rat::zero(), Rat::zero()];
        Self::new(gram, [zero.clone(), zero], g)
    }

    /// Smallest Pell automorph of `P` from `t² − Du² = 4`, `1 ≤ u ≤ max_u`.
    pub fn find_automorph(gram: &SymT<Z>, max_u: u64) -> Result<Mat2<Z>> {
        if !gram.is_indefinite() {
            return Err(Error::NotIndefinite(gram.to_string()));
        }
        let two = Rat::from_integer(Z::from_small(2));
        let b2 = gram.t0.clone() * two;
        let s = gram.t1.denom().lcm(b2.denom()).lcm(gram.t2.denom());
        let sr = Rat::from_integer(s);
        let a = (gram.t1.clone() * sr.clone()).to_integer();
        let b = (b2 * sr.clone()).to_integer();
        let c = (gram.t2.clone() * sr).to_integer();
        let d = b.clone() * b.clone() - Z::from_small(4) * a.clone() * c.clone();
        let two = Z::from_small(2);
        for u in 1..=max_u {
            let u = Z::from_u64(u).expect("u64 fits");
            let Some(t) = exact_sqrt(&(d.clone() * u.clone() * u.clone() + Z::from_small(4))) else {
                continue;
            };
            let bu = b.clone() * u.clone();
            let g = Mat2::new(
                (t.clone() - bu.clone()) / two.clone(),
                -(c.clone() * u.clone()),
                a.clone() * u.clone(),
                (t + bu) / two.clone(),
            );
            for cand in [g.clone(), g.transpose(), g.adj(), g.adj().transpose()] {
                if cand.det().is_one() && gram.congruent(&cand) == *gram {
                    return Ok(cand);
                }
            }
        }
        Err(Error::InvalidLattice(format!("no automorph with u ≤ {max_u}")))
    }

    pub fn gram(&self) -> &SymT<Z> {
        &self.gram
    }

    pub fn shift(&self) -> &[Vec2<Z>; 2] {
        &self.shift
    }

    pub fn automorph(&self) -> &Mat2<Z> {
        &self.automorph
    }

    /// `ᵀX P Y`.
    pub fn bilinear(&self, x: &Vec2<Z>, y: &Vec2<Z>) -> Rat<Z> {
        let p = &self.gram;
        p.t1.clone() * x[0].clone() * y[0].clone()
            + p.t0.clone() * (x[0].clone() * y[1].clone() + x[1].clone() * y[0].clone())
            + p.t2.clone() * x[1].clone() * y[1].clone()
    }

    pub fn norm(&self, x: &Vec2<Z>) -> Rat<Z> {
        self.bilinear(x, x)
    }

    /// `log λ²` for the eigenvalue `λ > 1` of `γ`.
    pub fn period(&self) -> f64 {
        self.core.period()
    }

    /// `log|ℓ₊(X)/ℓ₋(X)|` where `P(X) = p₁₁ℓ₊(X)ℓ₋(X)`; `⟨γ⟩` shifts it by the period.
    pub fn tau(&self, x: &Vec2<Z>) -> f64 {
        self.core.tau(&wide_vec(x))
    }

    /// All `X₂ ∈ ℤ² + η₂` with `ᵀX₁PX₂ = t0` and `ᵀX₂PX₂ = t2`.
    pub fn second_columns(&self, x1: &Vec2<Z>, t0: &Rat<Z>, t2: &Rat<Z>) -> Result<Vec<Vec2<Z>>> {
        self.core
            .second_columns(&wide_vec(x1), &wide(t0), &wide(t2))
            .iter()
            .map(narrow)
            .collect()
    }

    /// `ρ(T) = Σ_{N ∈ ⟨γ⟩\𝓡} sgn det N` over `𝓡 = {N : ᵀNPN = T}` with
    /// columns in `ℤ² + η₁`, `ℤ² + η₂`.
    ///
    /// Zero unless `det T < 0` and `det T / det P ∈ ℚ²`.
    pub fn rho(&self, t: &SymT<Z>, opts: &RhoOptions) -> Result<i64> {
        self.core.rho(&wide_sym(t), opts)
    }
}

/// `ρ(T)` with the default window.
pub fn rho_indef<Z: Int>(lat: &Lattice11<Z>, t: &SymT<Z>) -> Result<i64> {
    lat.rho(t, &RhoOptions::default())
}
