// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss–Kronrod (7/15) quadrature.

use crate::num::Real;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealTol<F> {
    pub value: F,
    pub err: F,
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
fn panel<F: Real>(f: &impl Fn(F) -> F, a: F, b: F) -> RealTol<F> {
    let half = F::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut k = fc * F::lit(WGK[7]);
    let mut g = fc * F::lit(WG[3]);
    for i in 0..7 {
        let dx = h * F::lit(XGK[i]);
        let s = f(c - dx) + f(c + dx);
        k = k + s * F::lit(WGK[i]);
        if i % 2 == 1 {
            g = g + s * F::lit(WG[i / 2]);
        }
    }
    RealTol {
        value: k * h,
        err: ((k - g) * h).abs(),
    }
}

const MAX_DEPTH: u32 = 48;

fn adapt<F: Real>(f: &impl Fn(F) -> F, a: F, b: F, tol: F, whole: RealTol<F>, depth: u32) -> RealTol<F> {
    if whole.err <= tol || depth >= MAX_DEPTH || !whole.err.is_finite() {
        return whole;
    }
    let m = (a + b) * F::lit(0.5);
    let (l, r) = (panel(f, a, m), panel(f, m, b));
    let half = tol * F::lit(0.5);
    let l = adapt(f, a, m, half, l, depth + 1);
    let r = adapt(f, m, b, half, r, depth + 1);
    RealTol {
        value: l.value + r.value,
        err: l.err + r.err,
    }
}

/// `∫_a^b f` to absolute tolerance `tol`; the reported error is the summed
/// Kronrod–Gauss differences of the accepted panels.
pub fn integrate<F: Real>(f: impl Fn(F) -> F, a: F, b: F, tol: F) -> Result<RealTol<F>> {
    if !(tol > F::zero()) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let whole = panel(&f, a, b);
    let out = adapt(&f, a, b, tol, whole, 0);
    if !out.value.is_finite() {
        return Err(Error::Domain("non-finite integrand".into()));
    }
    Ok(out)
}

/// `∫_0^∞ f` given a certified bound `tail(T) ≥ ∫_T^∞ |f|`.
pub fn integrate_half_line<F: Real>(
    f: impl Fn(F) -> F,
    tail: impl Fn(F) -> F,
    tol: F,
) -> Result<RealTol<F>> {
    let budget = tol * F::lit(0.25);
    let mut t = F::lit(0.5);
    let mut steps = 0;
    while !(tail(t) <= budget) {
        t = t + F::lit(0.25);
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Domain("tail bound does not decay".into()));
        }
    }
    let body = integrate(f, F::zero(), t, tol * F::lit(0.5))?;
    Ok(RealTol {
        value: body.value,
        err: body.err + tail(t),
    })
}
