//! Tolerances shared by the checks and the CLI.
//!
//! Comparisons are relative to `max(1, |x|, |y|)`; the floor of 1 makes
//! tiny quantities compare absolutely.

use crate::C64;

/// Single-linkage clustering tolerance for orbit deduplication.
pub const DEDUP: f64 = 1e-7;

/// Smallest tolerance the deduplication accepts.
pub const DEDUP_FLOOR: f64 = 1e-10;

/// Inter-cluster gaps within this multiple of the tolerance are ambiguous.
pub const AMBIGUITY_FACTOR: f64 = 10.0;

/// Acceptance of the three over-determination residuals of the (a, b, c) fit.
pub const RESIDUAL: f64 = 1e-6;

/// Spread of (a, b, c) across permutations of one parity.
pub const SPREAD: f64 = 1e-7;

/// Relative size of the vanishing z⁴ and z² coefficients and power sums.
pub const SUPPRESSED: f64 = 1e-7;

/// Hard failure threshold inside `phi_quintic`.
pub const SUPPRESSED_HARD: f64 = 1e-5;

/// A singular value counts toward the rank when above this multiple of the largest.
pub const RANK: f64 = 1e-6;

/// Matching tolerance for root sets recovered by the root finder.
pub const ROOT_MATCH: f64 = 1e-6;

/// `|p_2|` must exceed this for the power-sum check to be non-vacuous.
pub const CONTROL: f64 = 1e-3;

/// Instances with `|√disc| < DEGENERACY · scale¹⁰` are degenerate.
pub const DEGENERACY: f64 = 1e-8;

/// `max(1, |a|, |b|)`.
pub fn scale2(a: C64, b: C64) -> f64 {
    1f64.max(a.norm()).max(b.norm())
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    (a - b).norm() / scale2(a, b)
}

/// `|a| / max(1, scale)`.
pub fn rel_mag(a: C64, scale: f64) -> f64 {
    a.norm() / scale.max(1.0)
}
