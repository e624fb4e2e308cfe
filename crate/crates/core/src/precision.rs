//! Tolerance profiles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::GroupDescriptor;

/// Selects the tolerance budget.
///
/// `FiniteExact` holds finite groups to the exact-summation budget and
/// quadrature groups (torus, SU(2)) to the quadrature budget. `Quadrature`
/// applies the quadrature budget everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrecisionProfile {
    #[default]
    FiniteExact,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Unitarity, homomorphism and Schur orthogonality.
    pub representation: f64,
    /// Forward/inverse round trips, absolute.
    pub round_trip: f64,
    /// Relative slack allowed on inequality checks.
    pub check: f64,
    /// Relative error allowed on the Bessel-potential isometry.
    pub isometry: f64,
}

pub const EXACT: Tolerances = Tolerances {
    representation: 1e-14,
    round_trip: 1e-13,
    check: 1e-12,
    isometry: 1e-12,
};

pub const QUADRATURE: Tolerances = Tolerances {
    representation: 1e-10,
    round_trip: 1e-9,
    check: 1e-9,
    isometry: 1e-12,
};

impl PrecisionProfile {
    pub fn tolerances(self, group: &GroupDescriptor) -> Tolerances {
        match self {
            PrecisionProfile::FiniteExact if group.is_finite() => EXACT,
            _ => QUADRATURE,
        }
    }
}

impl fmt::Display for PrecisionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrecisionProfile::FiniteExact => "finite_exact",
            PrecisionProfile::Quadrature => "quadrature",
        })
    }
}

impl FromStr for PrecisionProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "finite_exact" => Ok(PrecisionProfile::FiniteExact),
            "quadrature" => Ok(PrecisionProfile::Quadrature),
            other => Err(Error::Config(format!(
                "unknown precision profile {other:?} (expected finite_exact or quadrature)"
            ))),
        }
    }
}
