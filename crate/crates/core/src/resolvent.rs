//! The sextic in `F = f²`, the fit of `a, b, c` in
//!
//! ```text
//! G⁶ + 4aG⁵ + 10bG³ + 4cG − 4ac + 5b² = 0,   G = F + a,
//! ```
//!
//! and the check that `(a, b, c)` is two-valued under relabelling of the roots.
//!
//! Expanding in `F` gives
//!
//! ```text
//! s5 = 10a
//! s4 = 35a²
//! s3 = 60a³ + 10b
//! s2 = 55a⁴ + 30ab
//! s1 = 26a⁵ + 30a²b + 4c
//! s0 = 5a⁶ + 10a³b + 5b²
//! ```
//!
//! so `a, b, c` come from `s5, s3, s1` and `s4, s2, s0` are left over as
//! independent checks.

use rayon::prelude::*;

use crate::family::{f_family, FFamily};
use crate::perm::{self, Perm5};
use crate::poly::{self, MonicPoly, RootTuple};
use crate::tolerance::{self, rel_diff};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FitResiduals {
    pub r4: f64,
    pub r2: f64,
    pub r0: f64,
}

impl FitResiduals {
    pub fn max(&self) -> f64 {
        self.r4.max(self.r2).max(self.r0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolventCoeffs {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub residuals: FitResiduals,
}

impl ResolventCoeffs {
    pub fn triple(&self) -> [C64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn accepted(&self) -> bool {
        self.residuals.max() < tolerance::RESIDUAL
    }
}

/// `Π (F − v²)` over `v ∈ {f, f_0, ..., f_4}`.
pub fn sextic_from_family(fam: &FFamily) -> MonicPoly {
    let squares: Vec<C64> = fam.values().iter().map(|v| v * v).collect();
    poly::poly_from_roots(&squares).expect("six roots")
}

/// Smallest relative gap between two of the six squared family values.
/// Small gaps make the fit residuals sensitive to rounding.
pub fn min_square_gap(fam: &FFamily) -> f64 {
    let sq = fam.values().map(|v| v * v);
    let mut gap = f64::INFINITY;
    for i in 0..6 {
        for j in i + 1..6 {
            gap = gap.min(rel_diff(sq[i], sq[j]));
        }
    }
    gap
}

/// Fits `(a, b, c)` from `s5, s3, s1` and reports the three leftover
/// coefficient mismatches relative to `max(1, |s_j|)`.
pub fn fit_abc(sextic: &MonicPoly) -> Result<ResolventCoeffs> {
    if sextic.degree() != 6 {
        return Err(Error::InvalidInput(format!(
            "fit_abc needs a sextic, got degree {}",
            sextic.degree()
        )));
    }
    let s = |k: usize| sextic.coeff(k);
    let a = s(5) / 10.0;
    let a2 = a * a;
    let a3 = a2 * a;
    let b = (s(3) - a3 * 60.0) / 10.0;
    let c = (s(1) - a3 * a2 * 26.0 - a2 * b * 30.0) / 4.0;

    let rel = |actual: C64, model: C64| (actual - model).norm() / actual.norm().max(1.0);
    let residuals = FitResiduals {
        r4: rel(s(4), a2 * 35.0),
        r2: rel(s(2), a2 * a2 * 55.0 + a * b * 30.0),
        r0: rel(s(0), a3 * a3 * 5.0 + a3 * b * 10.0 + b * b * 5.0),
    };
    Ok(ResolventCoeffs { a, b, c, residuals })
}

/// `G⁶ + 4aG⁵ + 10bG³ + 4cG − 4ac + 5b²` with `G = F + a`.
pub fn eval_form_i(f2: C64, a: C64, b: C64, c: C64) -> C64 {
    form_i_terms(f2, a, b, c).iter().sum()
}

fn form_i_terms(f2: C64, a: C64, b: C64, c: C64) -> [C64; 6] {
    let g = f2 + a;
    let g3 = g * g * g;
    [
        g3 * g3,
        a * g3 * g * g * 4.0,
        b * g3 * 10.0,
        c * g * 4.0,
        -a * c * 4.0,
        b * b * 5.0,
    ]
}

/// `|form(F)| / max(1, Σ |term|)`: the residual measured against the size of
/// the terms that cancel.
pub fn form_i_relative(f2: C64, a: C64, b: C64, c: C64) -> f64 {
    let terms = form_i_terms(f2, a, b, c);
    let mag: f64 = terms.iter().map(|t| t.norm()).sum();
    terms.iter().sum::<C64>().norm() / mag.max(1.0)
}

/// Expands the resolvent form into a monic sextic in `F` by polynomial
/// arithmetic on `G = F + a`.
pub fn expand_form_i(a: C64, b: C64, c: C64) -> MonicPoly {
    // Ascending coefficient vectors.
    fn mul(p: &[C64], q: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    let one = C64::new(1.0, 0.0);
    let g = vec![a, one];
    let mut powers = vec![vec![one]];
    for k in 1..=6 {
        let next = mul(&powers[k - 1], &g);
        powers.push(next);
    }
    let mut total = vec![C64::new(0.0, 0.0); 7];
    let mut add = |p: &[C64], w: C64| {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x * w;
        }
    };
    add(&powers[6], one);
    add(&powers[5], a * 4.0);
    add(&powers[3], b * 10.0);
    add(&powers[1], c * 4.0);
    add(&powers[0], b * b * 5.0 - a * c * 4.0);
    total.pop();
    total.reverse();
    MonicPoly::new(total).expect("finite coefficients")
}

/// The degree-12 resolvent in `f`, i.e. the fitted sextic with `F = f²`.
pub fn degree12_poly(coeffs: &ResolventCoeffs) -> MonicPoly {
    expand_form_i(coeffs.a, coeffs.b, coeffs.c).compose_square()
}

/// `(a, b, c)` of one root tuple through family, sextic and fit.
pub fn resolvent_coeffs(rt: &RootTuple) -> ResolventCoeffs {
    fit_abc(&sextic_from_family(&f_family(rt))).expect("sextic")
}

#[derive(Clone, Copy, Debug)]
pub struct TwoValuednessReport {
    pub even_triple: [C64; 3],
    pub odd_triple: [C64; 3],
    pub even_spread: f64,
    pub odd_spread: f64,
    pub pair_symmetric_spread: f64,
}

impl TwoValuednessReport {
    pub fn within(&self, tol: f64) -> bool {
        self.even_spread < tol && self.odd_spread < tol && self.pair_symmetric_spread < tol
    }
}

fn triple_spread(x: &[C64; 3], y: &[C64; 3]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&p, &q)| rel_diff(p, q))
        .fold(0.0, f64::max)
}

/// Sums and products of the two triples, componentwise.
fn pair_symmetric(x: &[C64; 3], y: &[C64; 3]) -> [C64; 6] {
    [
        x[0] + y[0],
        x[1] + y[1],
        x[2] + y[2],
        x[0] * y[0],
        x[1] * y[1],
        x[2] * y[2],
    ]
}

/// Fits `(a, b, c)` on all 120 relabellings of `rt`.
///
/// Even relabellings must reproduce the triple of `rt`, odd ones a second
/// triple (that of `rt` with `x0, x1` swapped); sums and products of the two
/// triples must be the same for every relabelling.
pub fn two_valuedness_check(rt: &RootTuple) -> Result<TwoValuednessReport> {
    if rt.is_degenerate() {
        return Err(Error::Degenerate("repeated roots".into()));
    }
    let swap = Perm5::transposition(0, 1);
    let even_triple = resolvent_coeffs(rt).triple();
    let odd_triple = resolvent_coeffs(&perm::apply(&swap, rt)).triple();
    let reference = pair_symmetric(&even_triple, &odd_triple);

    let per_perm: Vec<(i8, f64, f64)> = perm::all_s5()
        .par_iter()
        .map(|p| {
            let moved = perm::apply(p, rt);
            let t = resolvent_coeffs(&moved).triple();
            let partner = resolvent_coeffs(&perm::apply(&swap, &moved)).triple();
            let expected = if p.is_even() { &even_triple } else { &odd_triple };
            let sym = pair_symmetric(&t, &partner);
            let sym_spread = sym
                .iter()
                .zip(&reference)
                .map(|(&u, &v)| rel_diff(u, v))
                .fold(0.0, f64::max);
            (p.parity(), triple_spread(&t, expected), sym_spread)
        })
        .collect();

    let mut report = TwoValuednessReport {
        even_triple,
        odd_triple,
        even_spread: 0.0,
        odd_spread: 0.0,
        pair_symmetric_spread: 0.0,
    };
    for (parity, spread, sym) in per_perm {
        if parity > 0 {
            report.even_spread = report.even_spread.max(spread);
        } else {
            report.odd_spread = report.odd_spread.max(spread);
        }
        report.pair_symmetric_spread = report.pair_symmetric_spread.max(sym);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::random_instance;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn zero_family_gives_f6() {
        let fam = FFamily::from_values([c(0.0); 6]);
        let s = sextic_from_family(&fam);
        assert!(s.coeffs().iter().all(|x| x.norm() == 0.0));
        let fit = fit_abc(&s).unwrap();
        assert_eq!(fit.triple(), [c(0.0); 3]);
        assert_eq!(fit.residuals, FitResiduals::default());
    }

    #[test]
    fn unit_family_gives_binomial() {
        let fam = FFamily::from_values([c(1.0), c(-1.0), c(1.0), c(-1.0), c(1.0), c(1.0)]);
        let expected = [-6.0, 15.0, -20.0, 15.0, -6.0, 1.0];
        let s = sextic_from_family(&fam);
        for (x, e) in s.coeffs().iter().zip(expected) {
            assert_eq!(*x, c(e));
        }
    }

    #[test]
    fn sextic_vanishes_at_squares() {
        let fam = f_family(&random_instance(11, 4).unwrap());
        let s = sextic_from_family(&fam);
        let scale = s.max_coeff_norm().max(1.0);
        for v in fam.values() {
            assert!(s.eval(v * v).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn fit_rejects_wrong_degree() {
        let p = poly::poly_from_roots(&[c(1.0); 5]).unwrap();
        assert!(matches!(fit_abc(&p), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn form_at_g_zero() {
        let (a, b, cc) = (C64::new(0.5, 1.0), C64::new(-2.0, 0.3), C64::new(1.5, -0.7));
        let v = eval_form_i(-a, a, b, cc);
        assert!((v - (b * b * 5.0 - a * cc * 4.0)).norm() < 1e-14);
        let z = C64::new(0.7, 0.2);
        assert!((eval_form_i(z, c(0.0), c(0.0), c(0.0)) - z.powi(6)).norm() < 1e-15);
    }

    #[test]
    fn expansion_matches_direct_evaluation() {
        let (a, b, cc) = (C64::new(0.5, 1.0), C64::new(-2.0, 0.3), C64::new(1.5, -0.7));
        let p = expand_form_i(a, b, cc);
        for z in [c(0.0), c(1.3), C64::new(-0.4, 2.2)] {
            let direct = eval_form_i(z, a, b, cc);
            assert!((p.eval(z) - direct).norm() <= 1e-12 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn degree12_of_zero_is_monomial() {
        let zero = fit_abc(&expand_form_i(c(0.0), c(0.0), c(0.0))).unwrap();
        let p = degree12_poly(&zero);
        assert_eq!(p.degree(), 12);
        assert!(p.coeffs().iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn degree12_has_only_even_powers() {
        let fit = resolvent_coeffs(&random_instance(2, 2).unwrap());
        let p = degree12_poly(&fit);
        for k in (1..12).step_by(2) {
            assert_eq!(p.coeff(k), c(0.0));
        }
    }

    #[test]
    fn seeded_fit_is_accepted() {
        for index in 0..10 {
            let fit = resolvent_coeffs(&random_instance(17, index).unwrap());
            assert!(fit.accepted(), "{index}: {:?}", fit.residuals);
        }
    }

    #[test]
    fn identity_reproduces_reference_triple() {
        let rt = random_instance(4, 0).unwrap();
        let report = two_valuedness_check(&rt).unwrap();
        assert_eq!(report.even_triple, resolvent_coeffs(&rt).triple());
        assert!(report.within(tolerance::SPREAD), "{report:?}");
        assert!(triple_spread(&report.even_triple, &report.odd_triple) > 1e-6);
    }

    #[test]
    fn two_valuedness_rejects_degenerate() {
        let rt = RootTuple::new([c(1.0), c(1.0), c(2.0), c(3.0), c(4.0)]);
        assert!(matches!(two_valuedness_check(&rt), Err(Error::Degenerate(_))));
    }
}
