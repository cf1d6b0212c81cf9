// SPDX-License-Identifier: Apache-2.0

use super::quad::{integrate_half_line, RealTol};
use crate::num::Real;
use crate::{Error, Result};

/// `K₀(x) = ∫₀^∞ e^{−x cosh t} dt` for `x > 0`.
///
/// The tail past `T` is bounded by `e^{−x cosh T}/(x sinh T)`.
pub fn bessel_k0<F: Real>(x: F, tol: F) -> Result<RealTol<F>> {
    if !(x > F::zero()) {
        return Err(Error::Domain(format!("K0 needs x > 0, got {x}")));
    }
    integrate_half_line(
        |t: F| (-x * t.cosh()).exp(),
        |t: F| (-x * t.cosh()).exp() / (x * t.sinh()),
        tol,
    )
}

/// `√(π/(2x))·e^{−x}`, an upper bound for `K₀(x)`.
pub fn k0_upper_bound<F: Real>(x: F) -> F {
    (F::PI() / (F::lit(2.0) * x)).sqrt() * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_at_one() {
        let r = bessel_k0(1.0f64, 1e-12).unwrap();
        assert!((r.value - 0.421_024_438_240_708_33).abs() < 1e-12);
        assert!(r.err <= 1e-12);
    }

    #[test]
    fn decreasing_and_bounded() {
        let xs = [0.1f64, 0.5, 1.0, 2.0, 10.0];
        let vals: Vec<f64> = xs.iter().map(|&x| bessel_k0(x, 1e-12).unwrap().value).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]));
        for (&x, &v) in xs.iter().zip(&vals) {
            assert!(v < k0_upper_bound(x));
        }
    }

    #[test]
    fn domain() {
        assert!(bessel_k0(0.0f64, 1e-8).is_err());
        assert!(bessel_k0(-1.0f64, 1e-8).is_err());
    }
}
