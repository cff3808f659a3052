//! Numerical thresholds shared by every check in the crate.
//!
//! One value of [`Tolerances`] is threaded explicitly through the operations
//! that accept or reject their input, so a caller can tighten or loosen the
//! whole policy in one place.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative error allowed for exact multilinear identities.
    pub algebraic: f64,
    /// Relative error allowed when validating the SU(3) constraints.
    pub constraint: f64,
    /// Relative threshold under which a homogeneous invariant counts as zero.
    pub stability: f64,
    /// Singular values below `rank * largest` are treated as zero.
    pub rank: f64,
    /// Allowed vertical (t-directed) residual of a derivative on the group.
    pub horizontal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-12,
            constraint: 1e-10,
            stability: 1e-10,
            rank: 1e-8,
            horizontal: 1e-6,
        }
    }
}

/// `|a - b|_inf / max(|a|_inf, |b|_inf, 1)`.
pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut diff = 0.0_f64;
    let mut scale = 1.0_f64;
    for (x, y) in a.iter().zip(b) {
        diff = diff.max((x - y).abs());
        scale = scale.max(x.abs()).max(y.abs());
    }
    diff / scale
}

pub fn rel_diff_scalar(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
