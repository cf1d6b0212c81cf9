// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

//! Independent oracles shared by the integration tests.

use std::collections::HashMap;

use geolink::exact::{Mat2, SymT};
use geolink::Rational;
use num_integer::Integer;

/// Signed count of `⟨γ⟩`-orbits of `N = (X₁ X₂)` with `ᵀNPN = T`, columns in
/// `ℤ² + η_i` (`η_i` given with common denominator `e`), found by listing all
/// columns in a box and naming each orbit by its minimal-norm member.
pub fn brute_rho(p: &SymT<i64>, g: &Mat2<i64>, e: i64, eta: [[i64; 2]; 2], t: &SymT<i64>, b: i64) -> i64 {
    let s = [&p.t1, &p.t2, &(p.t0 * 2)]
        .iter()
        .fold(1i64, |acc, r| acc.lcm(r.denom()));
    let m = [
        (p.t1 * 2 * s).to_integer() as i128,
        (p.t0 * 2 * s).to_integer() as i128,
        (p.t2 * 2 * s).to_integer() as i128,
    ];
    let scale = Rational::from_integer(2 * s * e * e);
    let target = |r: &Rational| -> Option<i128> {
        let v = *r * scale;
        v.is_integer().then(|| v.to_integer() as i128)
    };
    let (Some(t1), Some(t0), Some(t2)) = (target(&t.t1), target(&t.t0), target(&t.t2)) else {
        return 0;
    };
    let bil = |x: [i128; 2], y: [i128; 2]| m[0] * x[0] * y[0] + m[1] * (x[0] * y[1] + x[1] * y[0]) + m[2] * x[1] * y[1];
    let column = |eta: [i64; 2], want: i128| {
        let mut out = Vec::new();
        for x in -b..=b {
            if (x - eta[0]).rem_euclid(e) != 0 {
                continue;
            }
            for y in -b..=b {
                if (y - eta[1]).rem_euclid(e) != 0 {
                    continue;
                }
                let v = [x as i128, y as i128];
                if bil(v, v) == want {
                    out.push(v);
                }
            }
        }
        out
    };
    let firsts = column(eta[0], t1);
    let seconds = column(eta[1], t2);
    let gm = [g.a as i128, g.b as i128, g.c as i128, g.d as i128];
    let gi = [gm[3], -gm[1], -gm[2], gm[0]];
    let act = |h: [i128; 4], n: [i128; 4]| {
        [
            h[0] * n[0] + h[1] * n[1],
            h[2] * n[0] + h[3] * n[1],
            h[0] * n[2] + h[1] * n[3],
            h[2] * n[2] + h[3] * n[3],
        ]
    };
    let norm = |n: [i128; 4]| n.iter().map(|v| v * v).sum::<i128>();
    let canon = |mut n: [i128; 4]| {
        loop {
            let up = act(gm, n);
            let down = act(gi, n);
            if norm(up) < norm(n) {
                n = up;
            } else if norm(down) < norm(n) {
                n = down;
            } else {
                let mut best = n;
                for c in [up, down] {
                    if norm(c) == norm(n) && c < best {
                        best = c;
                    }
                }
                return best;
            }
        }
    };
    let mut orbits: HashMap<[i128; 4], i64> = HashMap::new();
    for x1 in &firsts {
        for x2 in &seconds {
            if bil(*x1, *x2) != t0 {
                continue;
            }
            let n = [x1[0], x1[1], x2[0], x2[1]];
            let det = x1[0] * x2[1] - x1[1] * x2[0];
            orbits.insert(canon(n), det.signum() as i64);
        }
    }
    orbits.values().sum()
}

/// `K₀(x)` from the ascending series `−(ln(x/2) + γ)·I₀(x) + Σ H_k (x²/4)^k/(k!)²`.
pub fn k0_series(x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let y = x * x / 4.0;
    let (mut term, mut i0, mut tail, mut h) = (1.0f64, 1.0f64, 0.0f64, 0.0f64);
    for k in 1..200 {
        let kf = f64::from(k);
        term *= y / (kf * kf);
        h += 1.0 / kf;
        i0 += term;
        tail += h * term;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((x / 2.0).ln() + EULER) * i0 + tail
}

/// `K₀(x)` for `x ≥ 8` from the asymptotic expansion, cut at its smallest term.
pub fn k0_asymptotic(x: f64) -> f64 {
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 1..60 {
        let kf = f64::from(k);
        let next = -term * (2.0 * kf - 1.0).powi(2) / (kf * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() * sum
}

/// `K₀(x)` from whichever expansion is accurate at `x`.
pub fn k0_oracle(x: f64) -> f64 {
    if x < 8.0 {
        k0_series(x)
    } else {
        k0_asymptotic(x)
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// `K₀(z)` by composite Simpson on `e^{−z cosh s}`.
pub fn k0_simpson(z: f64) -> f64 {
    let mut top = 1.0;
    while (-z * f64::cosh(top)).exp() > 1e-20 {
        top += 0.5;
    }
    simpson(|s| (-z * s.cosh()).exp(), 0.0, top, 600)
}

/// `½√x₂ ∫₁^∞ e^{2πt x₁} K₀(2πt√(x₁² + x₂)) dt` as a literal double integral.
pub fn w_star_nested(x1: f64, x2: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let delta = (x1 * x1 + x2).sqrt();
    let f = |t: f64| (two_pi * t * x1).exp() * k0_simpson(two_pi * t * delta);
    let rate = two_pi * (delta - x1);
    let top = 1.0 + 40.0 / rate;
    let mut prev = simpson(f, 1.0, top, 200);
    let mut n = 400;
    loop {
        let cur = simpson(f, 1.0, top, n);
        if (cur - prev).abs() < 1e-14 || n > 20_000 {
            return 0.5 * x2.sqrt() * cur;
        }
        prev = cur;
        n *= 2;
    }
}

/// `N_T(t, d)` by scanning `σ₁, σ₂ ∈ [−b, b]`, `2σ₀ ∈ [−2b, 2b]`.
pub fn brute_nt(n: i64, r: i64, m: i64, t: i64, d: i64, b: i64) -> u64 {
    let mut count = 0;
    for s1 in -b..=b {
        for s2 in -b..=b {
            for s0 in -2 * b..=2 * b {
                if 2 * m * s1 - r * s0 + 2 * n * s2 == t && s0 * s0 - 4 * s1 * s2 == d {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Proper representations `N` with `det N > 0` and `q∘N = t`, in a box.
pub fn brute_rep_count(q: &geolink::bqf::Bqf<i64>, t: &geolink::bqf::Bqf<i64>, b: i64) -> u64 {
    let mut count = 0;
    for a in -b..=b {
        for c in -b..=b {
            if q.eval(&a, &c) != t.a {
                continue;
            }
            for bb in -b..=b {
                for d in -b..=b {
                    let h = Mat2::from_i64(a, bb, c, d);
                    if h.det() > 0 && q.act(&h) == *t {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}
