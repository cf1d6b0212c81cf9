// SPDX-License-Identifier: Apache-2.0

use super::quad::{integrate_half_line, RealTol};
use crate::num::Real;
use crate::{Error, Result};

/// `Δ = √(x₁² + x₂)` and `Δ − x₁`, the latter without cancellation.
fn gap<F: Real>(x1: F, x2: F) -> (F, F) {
    let delta = (x1 * x1 + x2).sqrt();
    let g0 = if x1 > F::zero() { x2 / (delta + x1) } else { delta - x1 };
    (delta, g0)
}

/// `W*(x₁, x₂) = ½√x₂ ∫₁^∞ e^{2πt x₁} K₀(2πt√(x₁² + x₂)) dt` for `x₂ > 0`.
///
/// Exchanging the two integrals gives
/// `W* = (√x₂/4π) ∫₀^∞ e^{−2πg(s)}/g(s) ds` with
/// `g(s) = Δ cosh s − x₁ = (Δ − x₁) + 2Δ sinh²(s/2)`.
pub fn w_star<F: Real>(x1: F, x2: F, tol: F) -> Result<RealTol<F>> {
    if !(x2 > F::zero()) {
        return Err(Error::Domain(format!("W* needs x2 > 0, got {x2}")));
    }
    let two = F::lit(2.0);
    let two_pi = two * F::PI();
    let pref = x2.sqrt() / (two * two_pi);
    let (delta, g0) = gap(x1, x2);
    let g = move |s: F| {
        let sh = (s / two).sinh();
        g0 + two * delta * sh * sh
    };
    let body = integrate_half_line(
        |s: F| {
            let gs = g(s);
            (-two_pi * gs).exp() / gs
        },
        |s: F| {
            let gs = g(s);
            (-two_pi * gs).exp() / (gs * two_pi * delta * s.sinh())
        },
        tol / pref,
    )?;
    Ok(RealTol {
        value: pref * body.value,
        err: pref * body.err,
    })
}

/// Closed-form bound `(√x₂/(4√Δ))·e^{−2π(Δ−x₁)}/(2π(Δ−x₁))`.
pub fn w_star_bound<F: Real>(x1: F, x2: F) -> F {
    let (delta, g0) = gap(x1, x2);
    let two_pi = F::lit(2.0) * F::PI();
    x2.sqrt() / (F::lit(4.0) * delta.sqrt()) * (-two_pi * g0).exp() / (two_pi * g0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_and_bounded() {
        for &(x1, x2) in &[(0.0f64, 1.0), (1.0, 0.5), (-2.0, 3.0), (5.0, 0.01), (0.3, 40.0)] {
            let w = w_star(x1, x2, 1e-14).unwrap();
            assert!(w.value > 0.0, "{x1} {x2}");
            assert!(w.value <= w_star_bound(x1, x2), "{x1} {x2}");
        }
    }

    #[test]
    fn domain() {
        assert!(w_star(0.0f64, 0.0, 1e-8).is_err());
        assert!(w_star(1.0f64, -1.0, 1e-8).is_err());
    }
}
