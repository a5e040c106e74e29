//! Centralized numeric tolerances.

use serde::{Deserialize, Serialize};

/// Tolerance bundle used by every check in the crate. All comparisons go
/// through one of these fields so the defaults live in exactly one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Accepted deviation for unitarity and circuit-equivalence checks.
    pub equivalence: f64,
    /// Accepted deviation of state norms from 1.
    pub normalization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            equivalence: 1e-10,
            normalization: 1e-12,
        }
    }
}

impl Tolerances {
    /// Default tolerances with the equivalence bound replaced.
    pub fn with_equivalence(equivalence: f64) -> Self {
        Self {
            equivalence,
            ..Self::default()
        }
    }
}
