// SPDX-License-Identifier: Apache-2.0

//! Analytic terms of the non-holomorphic completion: `K₀`, `W*`, the signed
//! indefinite representation numbers `ρ(T)` and the `β`-coefficients.

mod bessel;
mod beta;
mod lattice11;
mod quad;
mod wstar;

pub use bessel::{bessel_k0, k0_upper_bound};
pub use beta::{beta_coeff, beta_term, BetaOptions, BetaResult, CoeffBound};
pub use lattice11::{epsilon_sign, parse_vec2, rho_indef, Lattice11, RhoOptions, Vec2};
pub use quad::{integrate, integrate_half_line, RealTol};
pub use wstar::{w_star, w_star_bound};
