// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Int, Result};

/// Reduced rational with positive denominator.
pub type Rat<Z> = Ratio<Z>;

/// `n/d` reduced. Panics on `d = 0`; use [`rat_arith`] for checked division.
pub fn rat<Z: Int>(n: i64, d: i64) -> Rat<Z> {
    Ratio::new(Z::from_small(n), Z::from_small(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on rationals.
pub fn rat_arith<Z: Int>(x: &Rat<Z>, y: &Rat<Z>, op: RatOp) -> Result<Rat<Z>> {
    Ok(match op {
        RatOp::Add => x + y,
        RatOp::Sub => x - y,
        RatOp::Mul => x * y,
        RatOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            x / y
        }
    })
}

/// Parse `"p"` or `"p/q"`; zero denominators are rejected.
pub fn parse_rat<Z: Int>(s: &str) -> Result<Rat<Z>> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: Z = n.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
    let d: Z = d.parse().map_err(|_| Error::parse(s, "bad denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Ratio::new(n, d))
}

/// `Some(s)` with `s ≥ 0` and `s² = r`.
pub fn rat_sqrt<Z: Int>(r: &Rat<Z>) -> Option<Rat<Z>> {
    let n = crate::num::exact_sqrt(r.numer())?;
    let d = crate::num::exact_sqrt(r.denom())?;
    Some(Ratio::new(n, d))
}

pub fn rat_sign<Z: Int>(r: &Rat<Z>) -> i32 {
    crate::num::sign(r.numer())
}

/// Nearest `f64`; exact when numerator and denominator are exactly representable.
pub fn rat_to_f64<Z: Int>(r: &Rat<Z>) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let n: BigInt = r.numer().to_string().parse().expect("integer display");
            let d: BigInt = r.denom().to_string().parse().expect("integer display");
            Ratio::new(n, d).to_f64().unwrap_or(f64::NAN)
        }
    }
}
