//! Subcommands behind the `kronecker-quintic` binary and the per-instance
//! verification record they share.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::brioschi::{self, PHI_SIGNS};
use crate::family::{self, f_family};
use crate::instance::{pair, pairs, random_instance, InstanceSpec};
use crate::matching::matched_distance;
use crate::poly::{self, RootTuple};
use crate::resolvent::{self, ResolventCoeffs};
use crate::tolerance;
use crate::{Error, Result, C64};

pub const DEFAULT_REPORT: &str = "verify-report.json";

/// Newton-identity bridge between `p_3` and `e_3`.
pub const NEWTON_BRIDGE: f64 = 1e-10;

/// Share of instances whose `|p_2|` control must clear [`tolerance::CONTROL`].
pub const CONTROL_SHARE: f64 = 0.95;

/// Largest tolerated share of degenerate (skipped) instances in `verify`.
pub const MAX_SKIP_RATE: f64 = 0.01;

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct Tolerances {
    pub dedup: f64,
    pub residual: f64,
    pub spread: f64,
    pub suppressed: f64,
    pub rank: f64,
    pub root_match: f64,
    pub control: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            dedup: tolerance::DEDUP,
            residual: tolerance::RESIDUAL,
            spread: tolerance::SPREAD,
            suppressed: tolerance::SUPPRESSED,
            rank: tolerance::RANK,
            root_match: tolerance::ROOT_MATCH,
            control: tolerance::CONTROL,
        }
    }
}

impl Tolerances {
    /// `--tol` replaces every acceptance threshold; clustering, rank and
    /// control thresholds keep their defaults.
    pub fn with_override(tol: Option<f64>) -> Self {
        let mut t = Self::default();
        if let Some(tol) = tol {
            t.residual = tol;
            t.spread = tol;
            t.suppressed = tol;
            t.root_match = tol;
        }
        t
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Residuals {
    pub r4: f64,
    pub r2: f64,
    pub r0: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Spreads {
    pub even_spread: f64,
    pub odd_spread: f64,
    pub pair_symmetric_spread: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhiSummary {
    pub a5_count: usize,
    pub s5_count: usize,
    pub c4_mag: f64,
    pub c2_mag: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PowerSums {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub newton_gap: f64,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Every per-instance property, as recorded in the verify report.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub index: u64,
    pub roots: Vec<[f64; 2]>,
    pub degenerate: bool,
    pub orbit_count: Option<usize>,
    pub pair_count: Option<usize>,
    pub pairing_ok: Option<bool>,
    pub family: Option<Vec<[f64; 2]>>,
    pub fit_residuals: Option<Residuals>,
    pub form_i_max: Option<f64>,
    pub degree12_match: Option<f64>,
    pub two_valuedness: Option<Spreads>,
    pub phi: Option<PhiSummary>,
    pub power_sums: Option<PowerSums>,
    pub phi_invariance: Option<f64>,
    pub control_ok: Option<bool>,
    pub failures: Vec<String>,
    pub status: Status,
}

impl InstanceRecord {
    fn empty(index: u64, rt: &RootTuple) -> Self {
        Self {
            index,
            roots: pairs(rt.roots()),
            degenerate: false,
            orbit_count: None,
            pair_count: None,
            pairing_ok: None,
            family: None,
            fit_residuals: None,
            form_i_max: None,
            degree12_match: None,
            two_valuedness: None,
            phi: None,
            power_sums: None,
            phi_invariance: None,
            control_ok: None,
            failures: Vec::new(),
            status: Status::Pass,
        }
    }
}

fn check(failures: &mut Vec<String>, what: &str, value: f64, tol: f64) {
    if value.is_nan() || value >= tol {
        failures.push(format!("{what} = {value:e} exceeds tolerance {tol:e}"));
    }
}

/// Largest relative residual of the fitted form over the twelve orbit values.
pub fn form_i_max(orbit: &[C64], fit: &ResolventCoeffs) -> f64 {
    orbit
        .iter()
        .map(|v| resolvent::form_i_relative(v * v, fit.a, fit.b, fit.c))
        .fold(0.0, f64::max)
}

/// Distance between the roots of the degree-12 resolvent and the orbit values.
pub fn degree12_match(orbit: &[C64], fit: &ResolventCoeffs) -> Result<f64> {
    let roots = poly::find_roots(&resolvent::degree12_poly(fit))?;
    matched_distance(&roots, orbit)
        .ok_or_else(|| Error::Verification(format!("orbit has {} values, expected 12", orbit.len())))
}

/// Runs every per-instance property on `rt`.
pub fn check_instance(index: u64, rt: &RootTuple, tol: &Tolerances) -> InstanceRecord {
    let mut rec = InstanceRecord::empty(index, rt);
    if rt.is_degenerate() {
        rec.degenerate = true;
        rec.status = Status::Skipped;
        return rec;
    }
    let mut failures = Vec::new();

    let fam = f_family(rt);
    rec.family = Some(pairs(&fam.values()));
    match family::a5_orbit(rt, tol.dedup) {
        Ok(orbit) => {
            rec.orbit_count = Some(orbit.values.len());
            rec.pair_count = Some(orbit.pair_map.len());
            rec.pairing_ok = Some(orbit.is_complete());
            if !orbit.is_complete() {
                failures.push(format!(
                    "orbit: {} values, {} pairs, family matched: {}",
                    orbit.values.len(),
                    orbit.pair_map.len(),
                    orbit.family_match.iter().all(Option::is_some)
                ));
            }
            let fit = resolvent::fit_abc(&resolvent::sextic_from_family(&fam))
                .expect("sextic has degree 6");
            let r = fit.residuals;
            rec.fit_residuals = Some(Residuals {
                r4: r.r4,
                r2: r.r2,
                r0: r.r0,
            });
            check(&mut failures, "fit residual", r.max(), tol.residual);
            let form = form_i_max(&orbit.values, &fit);
            rec.form_i_max = Some(form);
            check(&mut failures, "form (I) residual", form, tol.residual);
            match degree12_match(&orbit.values, &fit) {
                Ok(d) => {
                    rec.degree12_match = Some(d);
                    check(&mut failures, "degree-12 root match", d, tol.root_match);
                }
                Err(e) => failures.push(format!("degree-12 roots: {e}")),
            }
        }
        Err(e) => failures.push(format!("orbit: {e}")),
    }

    match resolvent::two_valuedness_check(rt) {
        Ok(tv) => {
            rec.two_valuedness = Some(Spreads {
                even_spread: tv.even_spread,
                odd_spread: tv.odd_spread,
                pair_symmetric_spread: tv.pair_symmetric_spread,
            });
            check(&mut failures, "even spread", tv.even_spread, tol.spread);
            check(&mut failures, "odd spread", tv.odd_spread, tol.spread);
            check(&mut failures, "pair-symmetric spread", tv.pair_symmetric_spread, tol.spread);
        }
        Err(e) => failures.push(format!("two-valuedness: {e}")),
    }

    match brioschi::phi_values(rt, tol.dedup) {
        Ok(pf) => {
            let ps = brioschi::power_sum_check(&pf);
            rec.power_sums = Some(PowerSums {
                p1: ps.p1,
                p2: ps.p2_magnitude,
                p3: ps.p3,
                newton_gap: ps.newton_gap,
            });
            rec.control_ok = Some(ps.p2_magnitude > tol.control);
            check(&mut failures, "p1", ps.p1, tol.suppressed);
            check(&mut failures, "p3", ps.p3, tol.suppressed);
            check(&mut failures, "Newton bridge", ps.newton_gap, NEWTON_BRIDGE);
            if pf.values.len() != 5 || pf.s5_value_count != 10 {
                failures.push(format!(
                    "Φ takes {} values under A5 and {} under S5",
                    pf.values.len(),
                    pf.s5_value_count
                ));
            }
            let mut summary = PhiSummary {
                a5_count: pf.values.len(),
                s5_count: pf.s5_value_count,
                c4_mag: f64::NAN,
                c2_mag: f64::NAN,
            };
            if pf.values.len() == 5 {
                let values = poly::poly_from_roots(&pf.values).expect("five values");
                let m = pf.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
                summary.c4_mag = tolerance::rel_mag(values.coeffs()[0], m);
                summary.c2_mag = tolerance::rel_mag(values.coeffs()[2], m.powi(3));
                check(&mut failures, "|c4|", summary.c4_mag, tol.suppressed);
                check(&mut failures, "|c2|", summary.c2_mag, tol.suppressed);
            }
            rec.phi = Some(summary);
        }
        Err(e) => failures.push(format!("Φ values: {e}")),
    }

    match brioschi::invariance_check(rt) {
        Ok(d) => {
            rec.phi_invariance = Some(d);
            check(&mut failures, "Φ-quintic A5 invariance", d, tol.spread);
        }
        Err(e) => failures.push(format!("Φ invariance: {e}")),
    }

    rec.status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    rec.failures = failures;
    rec
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTest {
    pub samples: usize,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub sigma4_over_sigma1: f64,
    pub signs: [i8; 6],
    pub relations: Option<Vec<Vec<[f64; 2]>>>,
    pub integer_relations: Vec<[i32; 6]>,
    pub passed: bool,
}

pub fn rank_test(roots: &[RootTuple], tol: &Tolerances) -> Result<RankTest> {
    let samples: Vec<_> = roots.iter().map(f_family).collect();
    let r = family::relation_rank(&samples)?;
    let ratio = r.fourth_ratio();
    Ok(RankTest {
        samples: samples.len(),
        rank: r.rank,
        singular_values: r.singular_values.clone(),
        sigma4_over_sigma1: ratio,
        signs: r.signs,
        relations: r
            .relations
            .as_ref()
            .map(|rels| rels.iter().map(|v| pairs(v)).collect()),
        integer_relations: r.integer_relations.clone(),
        passed: r.rank == 3 && ratio < tol.rank,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub n: u64,
    pub tolerances: Tolerances,
    pub version: &'static str,
    pub wall_time_ms: u128,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub control_share: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub meta: Meta,
    pub rank_test: Option<RankTest>,
    pub failures: Vec<String>,
    pub instances: Vec<InstanceRecord>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            4
        }
    }
}

/// The full property suite over instances `(seed, 0..n)`.
pub fn cmd_verify(seed: u64, n: u64, tol: &Tolerances) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::InvalidInput("--n must be at least 1".into()));
    }
    let start = Instant::now();
    let roots: Vec<RootTuple> = (0..n)
        .into_par_iter()
        .map(|i| random_instance(seed, i))
        .collect::<Result<_>>()?;
    let instances: Vec<InstanceRecord> = roots
        .par_iter()
        .enumerate()
        .map(|(i, rt)| check_instance(i as u64, rt, tol))
        .collect();

    let count = |s: Status| instances.iter().filter(|r| r.status == s).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    let mut failures = Vec::new();
    if failed > 0 {
        failures.push(format!("{failed} instance(s) failed"));
    }
    let skip_rate = skipped as f64 / n as f64;
    if skipped > 0 && skip_rate >= MAX_SKIP_RATE {
        failures.push(format!("skip rate {skip_rate} not below {MAX_SKIP_RATE}"));
    }

    let controls: Vec<bool> = instances.iter().filter_map(|r| r.control_ok).collect();
    let control_share = if controls.is_empty() {
        0.0
    } else {
        controls.iter().filter(|&&c| c).count() as f64 / controls.len() as f64
    };
    if !controls.is_empty() && control_share < CONTROL_SHARE {
        failures.push(format!(
            "p2 control above {:e} on only {:.1}% of instances",
            tol.control,
            100.0 * control_share
        ));
    }

    let usable: Vec<RootTuple> = roots
        .iter()
        .zip(&instances)
        .filter(|(_, r)| !r.degenerate)
        .map(|(rt, _)| *rt)
        .collect();
    let rank_test = if usable.len() >= 10 {
        let rt = rank_test(&usable, tol)?;
        if !rt.passed {
            failures.push(format!(
                "rank test: rank {} with σ4/σ1 = {:e}",
                rt.rank, rt.sigma4_over_sigma1
            ));
        }
        Some(rt)
    } else {
        None
    };

    Ok(VerifyReport {
        meta: Meta {
            seed,
            n,
            tolerances: *tol,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: start.elapsed().as_millis(),
            passed,
            failed,
            skipped,
            control_share,
        },
        rank_test,
        failures,
        instances,
    })
}

/// Result of a single-instance command: a JSON report plus the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn root_tuple(spec: &InstanceSpec) -> Result<RootTuple> {
    let rt = spec.root_tuple()?;
    if rt.is_degenerate() {
        return Err(Error::Degenerate(
            "repeated or nearly repeated roots (|√disc| below the degeneracy floor)".into(),
        ));
    }
    Ok(rt)
}

#[derive(Serialize)]
struct ResolveReport {
    command: &'static str,
    tolerances: Tolerances,
    roots: Vec<[f64; 2]>,
    sqrt_discriminant: [f64; 2],
    family: Vec<[f64; 2]>,
    sextic_coefficients: Vec<[f64; 2]>,
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
    residuals: Residuals,
    min_square_gap: f64,
    clustered: bool,
    degree12_coefficients: Vec<[f64; 2]>,
    accepted: bool,
}

/// Family, sextic, fitted `(a, b, c)` and the degree-12 resolvent.
pub fn cmd_resolve(spec: &InstanceSpec, tol: &Tolerances) -> Result<Outcome> {
    let rt = root_tuple(spec)?;
    let fam = f_family(&rt);
    let sextic = resolvent::sextic_from_family(&fam);
    let fit = resolvent::fit_abc(&sextic)?;
    let deg12 = resolvent::degree12_poly(&fit);
    let gap = resolvent::min_square_gap(&fam);
    let accepted = fit.residuals.max() < tol.residual;
    let mut coefficients = vec![C64::new(1.0, 0.0)];
    coefficients.extend_from_slice(deg12.coeffs());
    let report = ResolveReport {
        command: "resolve",
        tolerances: *tol,
        roots: pairs(rt.roots()),
        sqrt_discriminant: pair(poly::sqrt_discriminant(&rt)),
        family: pairs(&fam.values()),
        sextic_coefficients: pairs(sextic.coeffs()),
        a: pair(fit.a),
        b: pair(fit.b),
        c: pair(fit.c),
        residuals: Residuals {
            r4: fit.residuals.r4,
            r2: fit.residuals.r2,
            r0: fit.residuals.r0,
        },
        min_square_gap: gap,
        clustered: gap < tolerance::RESIDUAL,
        degree12_coefficients: pairs(&coefficients),
        accepted,
    };
    Ok(Outcome {
        report: serde_json::to_value(report)?,
        exit_code: if accepted { 0 } else { 4 },
    })
}

#[derive(Serialize)]
struct OrbitJson {
    command: &'static str,
    tolerances: Tolerances,
    roots: Vec<[f64; 2]>,
    values: Vec<[f64; 2]>,
    pairs: Vec<(usize, usize)>,
    family_match: Vec<Option<String>>,
    complete: bool,
}

/// The twelve A5-values of `f`, their ± pairing and `±f_k` labels.
pub fn cmd_orbit(spec: &InstanceSpec, tol: &Tolerances) -> Result<Outcome> {
    let rt = root_tuple(spec)?;
    let orbit = family::a5_orbit(&rt, tol.dedup)?;
    let complete = orbit.is_complete();
    let report = OrbitJson {
        command: "orbit",
        tolerances: *tol,
        roots: pairs(rt.roots()),
        values: pairs(&orbit.values),
        pairs: orbit.pair_map.clone(),
        family_match: orbit
            .family_match
            .iter()
            .map(|m| m.map(|l| l.name()))
            .collect(),
        complete,
    };
    Ok(Outcome {
        report: serde_json::to_value(report)?,
        exit_code: if complete { 0 } else { 4 },
    })
}

#[derive(Serialize)]
struct OrbitBatchJson {
    command: &'static str,
    seed: u64,
    n: u64,
    tolerances: Tolerances,
    orbit_counts: Vec<usize>,
    pair_counts: Vec<usize>,
    degenerate: usize,
    rank_test: RankTest,
}

/// Orbit counts over `(seed, 0..n)` plus the rank test on the stacked families.
pub fn cmd_orbit_batch(seed: u64, n: u64, tol: &Tolerances) -> Result<Outcome> {
    if n < 10 {
        return Err(Error::InvalidInput("the rank test needs --n >= 10".into()));
    }
    let roots: Vec<RootTuple> = (0..n).map(|i| random_instance(seed, i)).collect::<Result<_>>()?;
    let usable: Vec<RootTuple> = roots.iter().filter(|r| !r.is_degenerate()).copied().collect();
    let orbits: Vec<family::OrbitReport> = usable
        .par_iter()
        .map(|rt| family::a5_orbit(rt, tol.dedup))
        .collect::<Result<_>>()?;
    let rank = rank_test(&usable, tol)?;
    let ok = rank.passed && orbits.iter().all(family::OrbitReport::is_complete);
    let report = OrbitBatchJson {
        command: "orbit",
        seed,
        n,
        tolerances: *tol,
        orbit_counts: orbits.iter().map(|o| o.values.len()).collect(),
        pair_counts: orbits.iter().map(|o| o.pair_map.len()).collect(),
        degenerate: roots.len() - usable.len(),
        rank_test: rank,
    };
    Ok(Outcome {
        report: serde_json::to_value(report)?,
        exit_code: if ok { 0 } else { 4 },
    })
}

#[derive(Serialize)]
struct BrioschiJson {
    command: &'static str,
    tolerances: Tolerances,
    roots: Vec<[f64; 2]>,
    family_signs: [i8; 6],
    phi_values: Vec<[f64; 2]>,
    s5_value_count: usize,
    p: [f64; 2],
    q: [f64; 2],
    r: [f64; 2],
    c4_mag: f64,
    c2_mag: f64,
    p1: f64,
    p2: f64,
    p3: f64,
    newton_gap: f64,
    a5_invariance: f64,
    accepted: bool,
}

/// The five A5-values of `Φ`, its principal quintic and the power sums.
pub fn cmd_brioschi(spec: &InstanceSpec, tol: &Tolerances) -> Result<Outcome> {
    let rt = root_tuple(spec)?;
    let pf = brioschi::phi_values(&rt, tol.dedup)?;
    if pf.values.len() != 5 {
        return Err(Error::Verification(format!(
            "Φ takes {} values under A5, expected 5",
            pf.values.len()
        )));
    }
    let quintic = brioschi::phi_quintic(&pf)?;
    let ps = brioschi::power_sum_check(&pf);
    let invariance = brioschi::invariance_check(&rt)?;
    let accepted = quintic.suppressed.c4_mag < tol.suppressed
        && quintic.suppressed.c2_mag < tol.suppressed
        && ps.p1 < tol.suppressed
        && ps.p3 < tol.suppressed
        && ps.newton_gap < NEWTON_BRIDGE
        && pf.s5_value_count == 10
        && invariance < tol.spread;
    let report = BrioschiJson {
        command: "brioschi",
        tolerances: *tol,
        roots: pairs(rt.roots()),
        family_signs: PHI_SIGNS,
        phi_values: pairs(&pf.values),
        s5_value_count: pf.s5_value_count,
        p: pair(quintic.p),
        q: pair(quintic.q),
        r: pair(quintic.r),
        c4_mag: quintic.suppressed.c4_mag,
        c2_mag: quintic.suppressed.c2_mag,
        p1: ps.p1,
        p2: ps.p2_magnitude,
        p3: ps.p3,
        newton_gap: ps.newton_gap,
        a5_invariance: invariance,
        accepted,
    };
    Ok(Outcome {
        report: serde_json::to_value(report)?,
        exit_code: if accepted { 0 } else { 4 },
    })
}

// ---------------------------------------------------------------------------
// Argument parsing and output.

#[derive(Debug, Parser)]
#[command(name = "kronecker-quintic", version, about = "Verify Kronecker's quintic resolvent numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Family, sextic, fitted (a, b, c) and degree-12 resolvent of one instance.
    Resolve(SingleArgs),
    /// The twelve orbit values of f; with --n, the rank test over a batch.
    Orbit(OrbitArgs),
    /// The Φ values and the principal quintic z⁵ + pz³ + qz + r.
    Brioschi(SingleArgs),
    /// Every property over the instances (seed, 0..n); writes a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// JSON file {"roots": [[re, im] x 5]}.
    #[arg(long, conflicts_with_all = ["coeffs", "seed"])]
    pub roots: Option<PathBuf>,
    /// JSON file {"coefficients": [[re, im] x 5]} of a monic quintic (z⁴ ... z⁰).
    #[arg(long, conflicts_with = "seed")]
    pub coeffs: Option<PathBuf>,
    /// Seed of the random instance generator.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Instance index within the seed's stream.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
}

impl SourceArgs {
    pub fn spec(&self) -> Result<InstanceSpec> {
        match (&self.roots, &self.coeffs, self.seed) {
            (Some(path), None, None) => load_spec(path, "roots"),
            (None, Some(path), None) => load_spec(path, "coefficients"),
            (None, None, Some(seed)) => Ok(InstanceSpec::Generator {
                seed,
                index: self.index,
            }),
            _ => Err(Error::InvalidInput(
                "give exactly one of --roots, --coeffs or --seed".into(),
            )),
        }
    }
}

fn load_spec(path: &Path, expected: &str) -> Result<InstanceSpec> {
    let spec = InstanceSpec::from_json_file(path)?;
    let matches = matches!(
        (&spec, expected),
        (InstanceSpec::Roots(_), "roots") | (InstanceSpec::Coefficients(_), "coefficients")
    );
    if !matches {
        return Err(Error::InvalidInput(format!(
            "{} does not contain \"{expected}\"",
            path.display()
        )));
    }
    Ok(spec)
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Acceptance tolerance overriding the defaults.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the JSON report here as well.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SingleArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Batch size; switches to the batch rank test.
    #[arg(long)]
    pub n: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub n: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn tolerances(output: &OutputArgs) -> Result<Tolerances> {
    match output.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            Err(Error::InvalidInput(format!("--tol must be positive, got {t}")))
        }
        t => Ok(Tolerances::with_override(t)),
    }
}

/// Renders a JSON value as `path: value` lines.
pub fn render_text(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                let is_pair = items.len() == 2 && items.iter().all(Value::is_number);
                if is_pair {
                    out.push_str(&format!("{prefix}: {v}\n"));
                } else {
                    for (i, child) in items.iter().enumerate() {
                        walk(&format!("{prefix}[{i}]"), child, out);
                    }
                }
            }
            _ => out.push_str(&format!("{prefix}: {v}\n")),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn emit(report: &Value, output: &OutputArgs) -> Result<()> {
    if let Some(path) = &output.out {
        std::fs::write(path, serde_json::to_string_pretty(report)?)?;
    }
    match output.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Text => print!("{}", render_text(report)),
    }
    Ok(())
}

fn run_single(
    source: &SourceArgs,
    output: &OutputArgs,
    command: fn(&InstanceSpec, &Tolerances) -> Result<Outcome>,
) -> Result<i32> {
    let tol = tolerances(output)?;
    let outcome = command(&source.spec()?, &tol)?;
    emit(&outcome.report, output)?;
    Ok(outcome.exit_code)
}

fn run_command(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Resolve(args) => run_single(&args.source, &args.output, cmd_resolve),
        Command::Brioschi(args) => run_single(&args.source, &args.output, cmd_brioschi),
        Command::Orbit(args) => match args.n {
            Some(n) => {
                let tol = tolerances(&args.output)?;
                let seed = args.source.seed.ok_or_else(|| {
                    Error::InvalidInput("batch mode (--n) needs --seed".into())
                })?;
                let outcome = cmd_orbit_batch(seed, n, &tol)?;
                emit(&outcome.report, &args.output)?;
                Ok(outcome.exit_code)
            }
            None => run_single(&args.source, &args.output, cmd_orbit),
        },
        Command::Verify(args) => {
            let tol = tolerances(&args.output)?;
            let report = cmd_verify(args.seed, args.n, &tol)?;
            let path = args
                .output
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT));
            std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            let summary = serde_json::json!({
                "report": path.display().to_string(),
                "meta": report.meta,
                "rank_test": report.rank_test.as_ref().map(|r| serde_json::json!({
                    "rank": r.rank,
                    "sigma4_over_sigma1": r.sigma4_over_sigma1,
                })),
                "failures": report.failures,
            });
            match args.output.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
                Format::Text => print!("{}", render_text(&summary)),
            }
            Ok(report.exit_code())
        }
    }
}

/// Runs the parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match run_command(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
