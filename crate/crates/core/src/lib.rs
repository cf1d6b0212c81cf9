// SPDX-License-Identifier: Apache-2.0

//! Exact computation of linking-number Fourier coefficients for closed
//! geodesics on the modular curve `Γ₁(5)\H`, together with the analytic
//! pieces (K₀, W*, indefinite representation numbers, β-coefficients) of the
//! non-holomorphic completion.
//!
//! Everything that feeds a discrete decision (arc membership, winding signs,
//! equivalence of forms) is computed exactly over a generic integer scalar
//! [`Int`]; floating point appears only in [`completion`], which is generic
//! over [`num_traits::Float`].
//!
//! The concrete aliases at the crate root fix the scalars used by the CLI:
//! `i64` for the modular-curve pipeline, [`BigInt`] where entries outgrow a
//! machine word, and `f64` for quadrature.

pub mod bqf;
pub mod completion;
pub mod cycles;
pub mod error;
pub mod exact;
pub mod gamma15;
pub mod linking;
pub mod num;
pub mod selftest;

pub use error::{Error, Result};
pub use num::{Int, Real};

pub use num_bigint::BigInt;

/// Machine-word rationals.
pub type Rational = exact::Rat<i64>;
/// Arbitrary-precision rationals.
pub type BigRational = exact::Rat<BigInt>;
/// Integral binary quadratic form over `i64`.
pub type Form = bqf::Bqf<i64>;
/// Integral binary quadratic form over [`BigInt`].
pub type BigForm = bqf::Bqf<BigInt>;
/// 2×2 integer matrix over `i64`.
pub type Matrix = exact::Mat2<i64>;
/// 2×2 integer matrix over [`BigInt`].
pub type BigMatrix = exact::Mat2<BigInt>;
/// Symmetric 2×2 rational matrix over `i64`.
pub type Sym = exact::SymT<i64>;
/// Symmetric 2×2 rational matrix over [`BigInt`].
pub type BigSym = exact::SymT<BigInt>;
/// Real quadratic irrational over `i64`.
pub type Surd = exact::QuadIrr<i64>;
/// Geodesic cycle on `Γ₁(5)\H` over `i64`.
pub type Cycle = gamma15::GeodesicCycle<i64>;
/// Set of geodesic cycles over `i64`.
pub type Cycles = linking::CycleSet<i64>;
/// Signature (1,1) lattice over [`BigInt`].
pub type IndefiniteLattice = completion::Lattice11<BigInt>;
/// Floating-point scalar used by the CLI.
pub type Float = f64;
