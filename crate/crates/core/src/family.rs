//! Kronecker's function `f`, its labelled family `f_0, ..., f_4`, the
//! A5-orbit of `f` and the rank test for the linear relations among the six
//! family values.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::perm::{self, Perm5};
use crate::poly::RootTuple;
use crate::tolerance::{self, rel_diff};
use crate::{Error, Result, C64};

const SIN_2PI_5: f64 = 0.951_056_516_295_153_5;
const SIN_4PI_5: f64 = 0.587_785_252_292_473_1;

/// `sin(2nπ/5)` for `n = 0..5`; `SIN_WEIGHTS[5 - n] == -SIN_WEIGHTS[n]` exactly.
pub const SIN_WEIGHTS: [f64; 5] = [0.0, SIN_2PI_5, SIN_4PI_5, -SIN_4PI_5, -SIN_2PI_5];

/// Argument order of `f_k` relative to `k`: `f_k = f(x_k, x_{k+3}, x_{k+4}, x_{k+1}, x_{k+2})`.
pub const FAMILY_OFFSETS: [usize; 5] = [0, 3, 4, 1, 2];

/// `Σ_{m=0..4} Σ_{n=1..4} sin(2nπ/5) · x_m · x_{m+n}² · x_{m+2n}²`, indices mod 5.
pub fn eval_f(rt: &RootTuple) -> C64 {
    let x = rt.roots();
    let monomial = |m: usize, n: usize| {
        let a = x[(m + n) % 5];
        let b = x[(m + 2 * n) % 5];
        x[m] * (a * a) * (b * b)
    };
    // Terms n and 5 - n share a weight up to sign; pairing them makes f
    // vanish exactly when all roots coincide.
    let mut acc = C64::new(0.0, 0.0);
    for m in 0..5 {
        for (n, &w) in SIN_WEIGHTS.iter().enumerate().take(3).skip(1) {
            acc += (monomial(m, n) - monomial(m, 5 - n)) * w;
        }
    }
    acc
}

/// The tuple `(x_k, x_{k+3}, x_{k+4}, x_{k+1}, x_{k+2})`.
pub fn family_arguments(rt: &RootTuple, k: usize) -> RootTuple {
    let x = rt.roots();
    RootTuple::new(std::array::from_fn(|j| x[(k + FAMILY_OFFSETS[j]) % 5]))
}

/// The six labelled values `f, f_0, ..., f_4` of one root tuple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FFamily {
    pub f: C64,
    pub fk: [C64; 5],
}

impl FFamily {
    /// `[f, f_0, f_1, f_2, f_3, f_4]`.
    pub fn values(&self) -> [C64; 6] {
        [self.f, self.fk[0], self.fk[1], self.fk[2], self.fk[3], self.fk[4]]
    }

    pub fn from_values(v: [C64; 6]) -> Self {
        Self {
            f: v[0],
            fk: [v[1], v[2], v[3], v[4], v[5]],
        }
    }

    /// Multiplies each of `[f, f_0, ..., f_4]` by the matching sign.
    pub fn signed(&self, signs: [i8; 6]) -> Self {
        let v = self.values();
        Self::from_values(std::array::from_fn(|i| v[i] * f64::from(signs[i])))
    }
}

pub fn f_family(rt: &RootTuple) -> FFamily {
    FFamily {
        f: eval_f(rt),
        fk: std::array::from_fn(|k| eval_f(&family_arguments(rt, k))),
    }
}

/// Which family member an orbit value equals: `sign · values()[index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedLabel {
    /// 0 for `f`, `k + 1` for `f_k`.
    pub index: usize,
    pub sign: i8,
}

impl SignedLabel {
    pub fn name(&self) -> String {
        let s = if self.sign > 0 { "+" } else { "-" };
        match self.index {
            0 => format!("{s}f"),
            k => format!("{s}f{}", k - 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Deduplicated orbit, in order of first appearance over A5.
    pub values: Vec<C64>,
    /// Index pairs `(i, j)`, `i < j`, with `values[j] ≈ -values[i]`.
    pub pair_map: Vec<(usize, usize)>,
    /// The unique `±f_k` each value matches; `None` if no or several labels match.
    pub family_match: Vec<Option<SignedLabel>>,
    pub degenerate: bool,
}

impl OrbitReport {
    /// Twelve values in six disjoint ± pairs, each tied to exactly one label.
    pub fn is_complete(&self) -> bool {
        if self.degenerate || self.values.len() != 12 || self.pair_map.len() != 6 {
            return false;
        }
        let mut covered = [false; 12];
        for &(i, j) in &self.pair_map {
            if covered[i] || covered[j] {
                return false;
            }
            covered[i] = true;
            covered[j] = true;
        }
        covered.iter().all(|&c| c) && self.family_match.iter().all(Option::is_some)
    }
}

/// Single-linkage clustering of `values` with relative tolerance `tol`
/// (floored at [`tolerance::DEDUP_FLOOR`]). Returns one representative per
/// cluster, the earliest member in input order.
///
/// Fails when two clusters come within `AMBIGUITY_FACTOR · tol` of each other.
pub fn dedup_values(values: &[C64], tol: f64) -> Result<Vec<C64>> {
    let tol = tol.max(tolerance::DEDUP_FLOOR);
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if rel_diff(values[i], values[j]) <= tol {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| root(&mut parent, i)).collect();

    let mut closest = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            if labels[i] != labels[j] {
                closest = closest.min(rel_diff(values[i], values[j]));
            }
        }
    }
    if closest <= tolerance::AMBIGUITY_FACTOR * tol {
        return Err(Error::numeric(
            format!(
                "ambiguous deduplication: clusters {closest:e} apart at tolerance {tol:e}; \
                 use a smaller tolerance or treat the instance as near-degenerate"
            ),
            closest,
        ));
    }

    let mut reps: Vec<usize> = labels.clone();
    reps.sort_unstable();
    reps.dedup();
    Ok(reps.into_iter().map(|i| values[i]).collect())
}

/// `f` evaluated on every relabelling in `group`, in group order.
pub fn orbit_values(rt: &RootTuple, group: &[Perm5]) -> Vec<C64> {
    group
        .par_iter()
        .map(|p| eval_f(&perm::apply(p, rt)))
        .collect()
}

/// The values of `f` under A5, their ± pairing and their identification with
/// `±f, ±f_0, ..., ±f_4`.
pub fn a5_orbit(rt: &RootTuple, tol: f64) -> Result<OrbitReport> {
    let raw = orbit_values(rt, &perm::all_a5());
    if rt.is_degenerate() {
        let values = crude_dedup(raw, tol);
        let n = values.len();
        return Ok(OrbitReport {
            values,
            pair_map: Vec::new(),
            family_match: vec![None; n],
            degenerate: true,
        });
    }

    let values = dedup_values(&raw, tol)?;
    let tol = tol.max(tolerance::DEDUP_FLOOR);

    let mut pair_map = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if rel_diff(values[i], -values[j]) <= tol {
                pair_map.push((i, j));
            }
        }
    }

    let family = f_family(rt).values();
    let family_match = values
        .iter()
        .map(|&v| {
            let mut hits = (0..6).flat_map(|index| {
                [1i8, -1].into_iter().filter_map(move |sign| {
                    (rel_diff(v, family[index] * f64::from(sign)) <= tol)
                        .then_some(SignedLabel { index, sign })
                })
            });
            match (hits.next(), hits.next()) {
                (Some(label), None) => Some(label),
                _ => None,
            }
        })
        .collect();

    Ok(OrbitReport {
        values,
        pair_map,
        family_match,
        degenerate: false,
    })
}

/// Greedy merge used only for degenerate tuples, where ambiguity is expected.
fn crude_dedup(values: Vec<C64>, tol: f64) -> Vec<C64> {
    let tol = tol.max(tolerance::DEDUP_FLOOR);
    let mut out: Vec<C64> = Vec::new();
    for v in values {
        if out.iter().all(|&u| rel_diff(u, v) > tol) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RelationRank {
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Null-space basis of the sample matrix when the rank is 3.
    pub relations: Option<Vec<[C64; 6]>>,
    /// Integer coefficient vectors (entries in −4..=4) annihilating every row.
    pub integer_relations: Vec<[i32; 6]>,
    /// Signs applied to `(f, f_0, ..., f_4)` before stacking.
    pub signs: [i8; 6],
}

impl RelationRank {
    /// `σ_4 / σ_1`, or 0 for a zero matrix.
    pub fn fourth_ratio(&self) -> f64 {
        match (self.singular_values.first(), self.singular_values.get(3)) {
            (Some(&s1), Some(&s4)) if s1 > 0.0 => s4 / s1,
            _ => 0.0,
        }
    }
}

/// Numerical rank of the matrix with one `(f, f_0, ..., f_4)` row per sample.
///
/// The rows use the family values with their natural signs. If that does not
/// give rank 3, the 32 sign patterns with `f` fixed are tried and the first
/// one achieving rank 3 is reported.
pub fn relation_rank(samples: &[FFamily]) -> Result<RelationRank> {
    if samples.len() < 10 {
        return Err(Error::InvalidInput(format!(
            "relation_rank needs at least 10 samples, got {}",
            samples.len()
        )));
    }
    let natural = rank_with_signs(samples, [1; 6]);
    if natural.rank == 3 || natural.singular_values[0] == 0.0 {
        return Ok(natural);
    }
    for mask in 1u8..32 {
        let mut signs = [1i8; 6];
        for (bit, s) in signs.iter_mut().skip(1).enumerate() {
            if mask & (1 << bit) != 0 {
                *s = -1;
            }
        }
        let attempt = rank_with_signs(samples, signs);
        if attempt.rank == 3 {
            return Ok(attempt);
        }
    }
    Ok(natural)
}

fn rank_with_signs(samples: &[FFamily], signs: [i8; 6]) -> RelationRank {
    let rows: Vec<[C64; 6]> = samples.iter().map(|s| s.signed(signs).values()).collect();
    let m = DMatrix::from_fn(rows.len(), 6, |i, j| rows[i][j]);
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let largest = singular_values.first().copied().unwrap_or(0.0);
    let rank = singular_values
        .iter()
        .filter(|&&s| s > tolerance::RANK * largest)
        .count();

    // Right singular vectors: rows of V^T, conjugated, span the null space
    // when their singular value is below the threshold.
    let right = |i: usize| -> [C64; 6] { std::array::from_fn(|j| v_t[(order[i], j)].conj()) };

    let (relations, integer_relations) = if rank == 3 && order.len() == 6 {
        let null: Vec<[C64; 6]> = (3..6).map(right).collect();
        let row_space: Vec<[C64; 6]> = (0..3).map(right).collect();
        let ints = integer_relations(&rows, &row_space);
        (Some(null), ints)
    } else {
        (None, Vec::new())
    };

    RelationRank {
        rank,
        singular_values,
        relations,
        integer_relations,
        signs,
    }
}

/// Searches coefficient vectors with entries in −4..=4 (first nonzero entry
/// positive) orthogonal to the row space, then confirms each one against the
/// raw rows.
fn integer_relations(rows: &[[C64; 6]], row_space: &[[C64; 6]]) -> Vec<[i32; 6]> {
    let mut found = Vec::new();
    let mut v = [-4i32; 6];
    loop {
        let first = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if first > 0 {
            let norm = (v.iter().map(|&c| (c * c) as f64).sum::<f64>()).sqrt();
            // V_r^T (not conjugated) applied to v gives the row-space component.
            let projection = row_space
                .iter()
                .map(|b| {
                    b.iter()
                        .zip(&v)
                        .map(|(x, &c)| x.conj() * f64::from(c))
                        .sum::<C64>()
                        .norm()
                })
                .fold(0.0, f64::max);
            if projection <= tolerance::RANK * norm && annihilates(rows, &v) {
                found.push(v);
            }
        }
        if !advance(&mut v) {
            return found;
        }
    }
}

fn annihilates(rows: &[[C64; 6]], v: &[i32; 6]) -> bool {
    rows.iter().all(|row| {
        let mut sum = C64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (x, &c) in row.iter().zip(v) {
            let t = x * f64::from(c);
            sum += t;
            mag += t.norm();
        }
        sum.norm() <= tolerance::RANK * mag.max(1.0)
    })
}

fn advance(v: &mut [i32; 6]) -> bool {
    for c in v.iter_mut().rev() {
        if *c < 4 {
            *c += 1;
            return true;
        }
        *c = -4;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::random_instance;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn sine_weights_match_libm() {
        for (n, &w) in SIN_WEIGHTS.iter().enumerate() {
            let exact = (2.0 * std::f64::consts::PI * n as f64 / 5.0).sin();
            assert!((w - exact).abs() < 1e-15);
        }
        assert_eq!(SIN_WEIGHTS[1], -SIN_WEIGHTS[4]);
        assert_eq!(SIN_WEIGHTS[2], -SIN_WEIGHTS[3]);
    }

    #[test]
    fn equal_roots_give_zero() {
        for x in [c(0.0), c(1.0), C64::new(0.3, -1.7)] {
            let rt = RootTuple::new([x; 5]);
            assert_eq!(eval_f(&rt), c(0.0));
            let fam = f_family(&rt);
            assert!(fam.values().iter().all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn family_argument_order() {
        let rt = RootTuple::new(std::array::from_fn(|i| c(i as f64)));
        let args = family_arguments(&rt, 0);
        assert_eq!(args.roots(), &[c(0.0), c(3.0), c(4.0), c(1.0), c(2.0)]);
        let args = family_arguments(&rt, 2);
        assert_eq!(args.roots(), &[c(2.0), c(0.0), c(1.0), c(3.0), c(4.0)]);
    }

    #[test]
    fn homogeneous_of_degree_five() {
        let rt = random_instance(7, 3).unwrap();
        let f = eval_f(&rt);
        let g = eval_f(&rt.scaled(c(2.0)));
        assert!((g - f * 32.0).norm() <= 1e-10 * g.norm().max(1.0));
    }

    #[test]
    fn generic_orbit_has_twelve_paired_values() {
        let rt = random_instance(1, 0).unwrap();
        let report = a5_orbit(&rt, tolerance::DEDUP).unwrap();
        assert_eq!(report.values.len(), 12);
        assert_eq!(report.pair_map.len(), 6);
        assert!(report.is_complete(), "{report:?}");
        for v in &report.values {
            assert!(report.values.iter().any(|w| rel_diff(*w, -*v) < 1e-9));
        }
    }

    #[test]
    fn degenerate_orbit_reports_single_zero() {
        let rt = RootTuple::new([C64::new(0.4, 0.2); 5]);
        let report = a5_orbit(&rt, tolerance::DEDUP).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.values, vec![c(0.0)]);
        assert!(!report.is_complete());
    }

    #[test]
    fn dedup_flags_ambiguous_gaps() {
        let v = [c(1.0), c(1.0 + 5e-7), c(2.0)];
        assert!(matches!(
            dedup_values(&v, 1e-7),
            Err(Error::NumericFailure { .. })
        ));
        assert_eq!(dedup_values(&v, 1e-6).unwrap(), vec![c(1.0), c(2.0)]);
        assert_eq!(dedup_values(&v, 1e-9).unwrap().len(), 3);
    }

    #[test]
    fn rank_examples() {
        assert!(matches!(
            relation_rank(&[f_family(&random_instance(1, 0).unwrap())]),
            Err(Error::InvalidInput(_))
        ));

        let one = f_family(&random_instance(1, 0).unwrap());
        assert_eq!(relation_rank(&[one; 10]).unwrap().rank, 1);

        let zero = f_family(&RootTuple::new([c(1.0); 5]));
        let r = relation_rank(&[zero; 12]).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.fourth_ratio(), 0.0);
    }

    #[test]
    fn fifty_samples_have_rank_three() {
        let samples: Vec<FFamily> = (0..50)
            .map(|i| f_family(&random_instance(3, i).unwrap()))
            .collect();
        let r = relation_rank(&samples).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(r.signs, [1; 6]);
        assert!(r.fourth_ratio() < 1e-6);
        let null = r.relations.unwrap();
        for v in &null {
            for s in &samples {
                let dot: C64 = s.values().iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.norm() < 1e-9 * s.values().iter().map(|x| x.norm()).sum::<f64>());
            }
        }
        // The relation space contains no nonzero integer vector.
        assert!(r.integer_relations.is_empty());
    }

    #[test]
    fn integer_relations_found_when_present() {
        // Rows satisfying f0 = f and f1 = 2 f2 - f3 and f4 = 0.
        let samples: Vec<FFamily> = (0..12)
            .map(|i| {
                let t = random_instance(9, i).unwrap().0;
                FFamily::from_values([t[0], t[0], 2.0 * t[1] - t[2], t[1], t[2], c(0.0)])
            })
            .collect();
        let r = relation_rank(&samples).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.integer_relations.contains(&[1, -1, 0, 0, 0, 0]));
        assert!(r.integer_relations.contains(&[0, 0, 1, -2, 1, 0]));
        assert!(r.integer_relations.contains(&[0, 0, 0, 0, 0, 1]));
    }
}
