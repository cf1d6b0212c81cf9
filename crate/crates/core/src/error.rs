// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Domain errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("negative radicand {0}: eigenvalues are not real")]
    NegativeRadicand(String),
    #[error("matrix is not half-integral")]
    NotHalfIntegral,
    #[error("form {0} is not definite")]
    NotDefinite(String),
    #[error("form {0} is not indefinite with nonsquare discriminant")]
    NotIndefinite(String),
    #[error("form {0} is not primitive")]
    NotPrimitive(String),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(String),
    #[error("geodesic through the cusp at infinity (leading coefficient zero)")]
    GeodesicThroughInfinity,
    #[error("cusp endpoint {0}")]
    CuspEndpoint(String),
    #[error("non-closed geodesic: {0}")]
    NonClosedGeodesic(String),
    #[error("determinant must be {expected}, got {got}")]
    BadDeterminant { expected: String, got: String },
    #[error("point is not in the fundamental domain")]
    PointNotReduced,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("coefficient bound violated: {0}")]
    BoundViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag, used by the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::Parse { .. } => "parse",
            Error::NotPositiveDefinite => "not_positive_definite",
            Error::NegativeRadicand(_) => "negative_radicand",
            Error::NotHalfIntegral => "not_half_integral",
            Error::NotDefinite(_) => "not_definite",
            Error::NotIndefinite(_) => "not_indefinite",
            Error::NotPrimitive(_) => "not_primitive",
            Error::DiscriminantMismatch(..) => "discriminant_mismatch",
            Error::InvalidDiscriminant(_) => "invalid_discriminant",
            Error::GeodesicThroughInfinity => "geodesic_through_infinity",
            Error::CuspEndpoint(_) => "cusp_endpoint",
            Error::NonClosedGeodesic(_) => "non_closed_geodesic",
            Error::BadDeterminant { .. } => "bad_determinant",
            Error::PointNotReduced => "point_not_reduced",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::Domain(_) => "domain",
            Error::BoundViolated(_) => "bound_violated",
        }
    }

    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}
