// SPDX-License-Identifier: Apache-2.0

//! Checks against golden values, shared by the CLI and tests.

use serde::Serialize;

use crate::bqf::{classes, equivalent_psl2z, Bqf};
use crate::completion::bessel_k0;
use crate::cycles::m_coeff;
use crate::exact::{rat, Rat, SymT};
use crate::gamma15::{traverse, winding};
use crate::linking::{reduced_range, iota_full, iota_prime, iota_prime_per_cycle, series_table, CycleSet};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn q(a: i64, b: i64, c: i64) -> Bqf<i64> {
    Bqf::from_i64(a, b, c)
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

/// The golden cycle set `c₁′, c₂′, c₃′`.
pub fn golden_cycle_forms() -> [Bqf<i64>; 3] {
    [q(1, 0, -3), q(2, 2, -1), q(-3, -11, 9)]
}

/// Golden series rows `(t1, 2t0, t2, value)`.
pub const GOLDEN_SERIES: [(i64, i64, i64, i64); 9] = [
    (2, 1, 3, 8),
    (2, 1, 4, 24),
    (2, 1, 5, 16),
    (3, 2, 4, 2),
    (2, 1, 6, -4),
    (3, 1, 4, -4),
    (2, 1, 7, 8),
    (3, 2, 5, 4),
    (3, 1, 5, -32),
];

pub fn class_group() -> Check {
    check("class group d = -23", || {
        let cls = classes(&-23i64)?;
        let want = [q(1, -1, 6), q(2, -1, 3), q(3, -1, 2)];
        let ok = cls.len() == 3
            && want
                .iter()
                .all(|w| cls.iter().filter(|c| equivalent_psl2z(&c.rep, w).is_some()).count() == 1);
        let reps: Vec<String> = cls.iter().map(|c| c.rep.to_string()).collect();
        Ok((ok, reps.join(" ")))
    })
}

pub fn traversal() -> Check {
    check("geodesic traversal", || {
        let want = [(5, [3, 2, 0]), (4, [2, -1, -1]), (9, [-5, -1, 1])];
        let mut ok = true;
        let mut sum = [0i64; 3];
        let mut detail = Vec::new();
        for (f, (len, h)) in golden_cycle_forms().iter().zip(want) {
            let c = traverse(f)?;
            ok &= c.len() == len && c.homology == h;
            for (s, x) in sum.iter_mut().zip(c.homology) {
                *s += x;
            }
            detail.push(format!("{f}: len {} h {:?}", c.len(), c.homology));
        }
        Ok((ok && sum == [0; 3], detail.join("; ")))
    })
}

pub fn winding_numbers() -> Check {
    check("winding numbers", || {
        let c = traverse(&q(2, 2, -1))?;
        let w1 = winding(&q(2, -1, 1), &c)?;
        let w2 = winding(&q(6, -1, 1), &c)?;
        Ok((w1 == rat(1, 1) && w2 == rat(2, 1), format!("{w1}, {w2}")))
    })
}

pub fn multiplicities() -> Check {
    check("multiplicities m(T, q)", || {
        let t = SymT::half_integral(2, 1, 3);
        let ms = [q(1, -1, 6), q(2, -1, 3), q(3, -1, 2)]
            .iter()
            .map(|c| m_coeff(&t, c))
            .collect::<Result<Vec<_>>>()?;
        Ok((ms == [0, 0, 2], format!("{ms:?}")))
    })
}

pub fn linking_example() -> Check {
    check("linking coefficient example", || {
        let cs = CycleSet::from_forms(&golden_cycle_forms())?;
        let t = SymT::half_integral(2, 1, 3);
        let ip = iota_prime(&t, &cs)?;
        let ifull = iota_full(&t, &cs)?;
        let per = iota_prime_per_cycle(&t, &cs)?;
        let want_per: Vec<Rat<i64>> = [0, 0, 8].iter().map(|&v| rat(v, 1)).collect();
        let mut below = true;
        for t in reduced_range(&rat(23, 4)) {
            below &= iota_full(&t, &cs)? == rat(0, 1) && iota_full(&t.flip_t0(), &cs)? == rat(0, 1);
        }
        let ok = ip == rat(8, 1) && ifull == rat(8, 1) && per == want_per && below;
        let per: Vec<String> = per.iter().map(ToString::to_string).collect();
        Ok((ok, format!("ι′ = {ip}, ι = {ifull}, per cycle [{}]", per.join(", "))))
    })
}

pub fn coefficient_table() -> Check {
    check("coefficient table", || {
        let cs = CycleSet::from_forms(&[q(-3, -11, 9)])?;
        let rows = series_table(&rat(15, 1), &cs, true)?;
        let got: Vec<(SymT<i64>, Rat<i64>)> = rows.into_iter().map(|r| (r.t, r.value)).collect();
        let want: Vec<(SymT<i64>, Rat<i64>)> = GOLDEN_SERIES
            .iter()
            .map(|&(a, b, c, v)| (SymT::half_integral(a, b, c), rat(v, 1)))
            .collect();
        Ok((got == want, format!("{} rows", got.len())))
    })
}

pub fn bessel() -> Check {
    check("K0(1)", || {
        let k = bessel_k0(1.0f64, 1e-12)?;
        Ok(((k.value - 0.421_024_438_240_708_33).abs() < 1e-10, format!("{:.15}", k.value)))
    })
}

/// Every golden check, in a fixed order.
pub fn run() -> Vec<Check> {
    vec![
        class_group(),
        traversal(),
        winding_numbers(),
        multiplicities(),
        linking_example(),
        coefficient_table(),
        bessel(),
    ]
}
