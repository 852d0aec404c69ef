//! Instance sources: seeded random root tuples and JSON input files.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{self, MonicPoly, RootTuple};
use crate::{Error, Result, C64};

pub const ANNULUS_INNER: f64 = 0.5;
pub const ANNULUS_OUTER: f64 = 1.5;
pub const MIN_SEPARATION: f64 = 1e-2;
const MAX_DRAWS: usize = 10_000;

/// Five roots drawn uniformly (by area) from the annulus `0.5 ≤ |z| ≤ 1.5`,
/// with every pairwise distance at least `1e-2`.
///
/// The stream depends only on `(seed, index)`.
pub fn random_instance(seed: u64, index: u64) -> Result<RootTuple> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let (r2_lo, r2_hi) = (ANNULUS_INNER.powi(2), ANNULUS_OUTER.powi(2));
    for _ in 0..MAX_DRAWS {
        let roots: [C64; 5] = std::array::from_fn(|_| {
            let r = rng.random_range(r2_lo..=r2_hi).sqrt();
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            C64::from_polar(r, theta)
        });
        let separated = (0..5).all(|i| (i + 1..5).all(|j| (roots[i] - roots[j]).norm() >= MIN_SEPARATION));
        if separated {
            return Ok(RootTuple::new(roots));
        }
    }
    Err(Error::numeric(
        format!("no separated root tuple after {MAX_DRAWS} draws"),
        0.0,
    ))
}

/// Where a single instance comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    /// Monic quintic, coefficients of `z⁴ ... z⁰`.
    Coefficients([C64; 5]),
    Roots([C64; 5]),
    Generator { seed: u64, index: u64 },
}

impl InstanceSpec {
    pub fn root_tuple(&self) -> Result<RootTuple> {
        match self {
            InstanceSpec::Roots(r) => Ok(RootTuple::new(*r)),
            InstanceSpec::Generator { seed, index } => random_instance(*seed, *index),
            InstanceSpec::Coefficients(c) => {
                let p = MonicPoly::new(c.to_vec())?;
                let roots = poly::find_roots(&p)?;
                Ok(RootTuple::new(std::array::from_fn(|i| roots[i])))
            }
        }
    }

    /// Reads `{"roots": [[re, im] × 5]}` or `{"coefficients": [[re, im] × 5]}`.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: InputFile = serde_json::from_str(text)?;
        match (file.roots, file.coefficients) {
            (Some(r), None) => Ok(InstanceSpec::Roots(five(&r, "roots")?)),
            (None, Some(c)) => Ok(InstanceSpec::Coefficients(five(&c, "coefficients")?)),
            _ => Err(Error::InvalidInput(
                "input must contain exactly one of \"roots\" or \"coefficients\"".into(),
            )),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    roots: Option<Vec<[f64; 2]>>,
    coefficients: Option<Vec<[f64; 2]>>,
}

fn five(pairs: &[[f64; 2]], what: &str) -> Result<[C64; 5]> {
    if pairs.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "\"{what}\" needs 5 entries, got {}",
            pairs.len()
        )));
    }
    if pairs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("\"{what}\" contains non-finite values")));
    }
    Ok(std::array::from_fn(|i| C64::new(pairs[i][0], pairs[i][1])))
}

/// Serialized form of a complex number.
pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pairs(zs: &[C64]) -> Vec<[f64; 2]> {
    zs.iter().copied().map(pair).collect()
}
