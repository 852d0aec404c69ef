//! The product `Φ = (f − f_0)(f_1 − f_4)(f_2 − f_3)` and the quintic its
//! values satisfy, which has no `z⁴` and no `z²` term.
//!
//! The family signs matter here. Taken with the signs the evaluation formulas
//! produce, `Φ` takes 30 values under A5. Negating `f_3` ([`PHI_SIGNS`]) makes
//! the signed family transform coherently, after which `Φ` takes 5 values under
//! A5 and 10 under S5.

use rayon::prelude::*;

use crate::family::{dedup_values, f_family, FFamily};
use crate::perm::{self, Perm5};
use crate::poly::{self, power_sums, RootTuple};
use crate::tolerance;
use crate::{Error, Result, C64};

/// Signs applied to `(f, f_0, f_1, f_2, f_3, f_4)` before forming `Φ`.
pub const PHI_SIGNS: [i8; 6] = [1, 1, 1, 1, -1, 1];

/// `(f − f_0)(f_1 − f_4)(f_2 − f_3)` of the given family, as is.
pub fn phi(fam: &FFamily) -> C64 {
    let [f, f0, f1, f2, f3, f4] = fam.values();
    (f - f0) * (f1 - f4) * (f2 - f3)
}

/// `Φ` of a root tuple, using the family normalised by [`PHI_SIGNS`].
pub fn phi_of_roots(rt: &RootTuple) -> C64 {
    phi(&f_family(rt).signed(PHI_SIGNS))
}

/// `Φ` on every relabelling in `group`, in group order.
pub fn phi_orbit(rt: &RootTuple, group: &[Perm5]) -> Vec<C64> {
    group
        .par_iter()
        .map(|p| phi_of_roots(&perm::apply(p, rt)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiFamily {
    /// Distinct values under A5, in order of first appearance.
    pub values: Vec<C64>,
    /// Number of distinct values under S5.
    pub s5_value_count: usize,
}

/// Distinct values of `Φ` under A5 (expected 5) and their count under S5
/// (expected 10).
pub fn phi_values(rt: &RootTuple, tol: f64) -> Result<PhiFamily> {
    if rt.is_degenerate() {
        return Err(Error::Degenerate("repeated roots".into()));
    }
    let all = phi_orbit(rt, &perm::all_s5());
    let even: Vec<C64> = perm::all_s5()
        .iter()
        .zip(&all)
        .filter(|(p, _)| p.is_even())
        .map(|(_, &v)| v)
        .collect();
    let values = dedup_values(&even, tol)?;
    let s5_value_count = dedup_values(&all, tol)?.len();
    Ok(PhiFamily {
        values,
        s5_value_count,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Suppressed {
    /// `|c4| / max(1, M)` with `M = max |Φ_i|`.
    pub c4_mag: f64,
    /// `|c2| / max(1, M³)`.
    pub c2_mag: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrincipalQuintic {
    pub p: C64,
    pub q: C64,
    pub r: C64,
    pub suppressed: Suppressed,
}

impl PrincipalQuintic {
    /// `z⁵ + p z³ + q z + r`.
    pub fn poly(&self) -> poly::MonicPoly {
        let zero = C64::new(0.0, 0.0);
        poly::MonicPoly::new(vec![zero, self.p, zero, self.q, self.r]).expect("finite")
    }
}

fn max_norm(values: &[C64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `Π (z − Φ_i)` read as `z⁵ + p z³ + q z + r`; the `z⁴` and `z²`
/// coefficients are recorded in `suppressed` and must be negligible.
pub fn phi_quintic(pf: &PhiFamily) -> Result<PrincipalQuintic> {
    if pf.values.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "phi_quintic needs 5 values, got {}",
            pf.values.len()
        )));
    }
    let p = poly::poly_from_roots(&pf.values)?;
    let c = p.coeffs();
    let m = max_norm(&pf.values);
    let suppressed = Suppressed {
        c4_mag: tolerance::rel_mag(c[0], m),
        c2_mag: tolerance::rel_mag(c[2], m.powi(3)),
    };
    if suppressed.c4_mag > tolerance::SUPPRESSED_HARD || suppressed.c2_mag > tolerance::SUPPRESSED_HARD {
        return Err(Error::Verification(format!(
            "z⁴/z² coefficients do not vanish: {:e}, {:e}",
            suppressed.c4_mag, suppressed.c2_mag
        )));
    }
    Ok(PrincipalQuintic {
        p: c[1],
        q: c[3],
        r: c[4],
        suppressed,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PowerSumCheck {
    /// `|Σ Φ_i| / max(1, M)`.
    pub p1: f64,
    /// `|Σ Φ_i³| / max(1, M³)`.
    pub p3: f64,
    /// `|Σ Φ_i²| / max(1, M²)`; generically not small.
    pub p2_magnitude: f64,
    /// Disagreement between `p_3` and `e_1³ − 3e_1e_2 + 3e_3`, relative to `M³`.
    pub newton_gap: f64,
}

pub fn power_sum_check(pf: &PhiFamily) -> PowerSumCheck {
    if pf.values.is_empty() {
        return PowerSumCheck::default();
    }
    let m = max_norm(&pf.values);
    let p = power_sums(&pf.values, 3);
    let e = poly::elementary_symmetric(&pf.values);
    let (e1, e2, e3) = (e[0], e.get(1).copied().unwrap_or_default(), e.get(2).copied().unwrap_or_default());
    let newton_p3 = e1 * e1 * e1 - e1 * e2 * 3.0 + e3 * 3.0;
    PowerSumCheck {
        p1: tolerance::rel_mag(p[0], m),
        p3: tolerance::rel_mag(p[2], m.powi(3)),
        p2_magnitude: tolerance::rel_mag(p[1], m.powi(2)),
        newton_gap: tolerance::rel_mag(p[2] - newton_p3, m.powi(3)),
    }
}

/// Coefficients of `Π (z − Φ_i)` for the A5-values of `Φ` on `rt`.
pub fn phi_coefficients(rt: &RootTuple, tol: f64) -> Result<Vec<C64>> {
    if rt.is_degenerate() {
        return Err(Error::Degenerate("repeated roots".into()));
    }
    let values = dedup_values(&phi_orbit(rt, &perm::all_a5()), tol)?;
    if values.len() != 5 {
        return Err(Error::Verification(format!(
            "Φ takes {} values under A5, expected 5",
            values.len()
        )));
    }
    Ok(poly::poly_from_roots(&values)?.coeffs().to_vec())
}

/// Largest `|x_k − y_k| / max(1, M^k)` over the coefficients of `z^(5-k)`,
/// where `M` bounds the roots; `c_k` is a degree-`k` symmetric function.
fn coefficient_deviation(x: &[C64], y: &[C64]) -> f64 {
    let root_bound = x
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(i, (&a, &b))| tolerance::rel_mag(a - b, root_bound.powi(i as i32 + 1)))
        .fold(0.0, f64::max)
}

/// Largest relative change of the Φ-quintic coefficients over all even
/// relabellings of `rt`.
pub fn invariance_check(rt: &RootTuple) -> Result<f64> {
    let reference = phi_coefficients(rt, tolerance::DEDUP)?;
    let deviations: Result<Vec<f64>> = perm::all_a5()
        .par_iter()
        .map(|p| {
            phi_coefficients(&perm::apply(p, rt), tolerance::DEDUP)
                .map(|c| coefficient_deviation(&reference, &c))
        })
        .collect();
    Ok(deviations?.into_iter().fold(0.0, f64::max))
}

/// Change of the Φ-quintic coefficients under the odd relabelling that swaps
/// `x0` and `x1`; generically not small.
pub fn odd_deviation(rt: &RootTuple) -> Result<f64> {
    let reference = phi_coefficients(rt, tolerance::DEDUP)?;
    let swapped = phi_coefficients(&perm::apply(&Perm5::transposition(0, 1), rt), tolerance::DEDUP)?;
    Ok(coefficient_deviation(&reference, &swapped))
}
