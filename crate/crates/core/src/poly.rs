//! Complex univariate polynomials, simultaneous root finding, symmetric
//! functions and the signed square root of the discriminant.

use std::f64::consts::PI;

use crate::tolerance;
use crate::{Error, Result, C64};

/// Largest degree handled by the constructors and the root finder.
pub const MAX_DEGREE: usize = 12;

/// Monic polynomial `z^n + c[0] z^(n-1) + ... + c[n-1]`.
///
/// The leading coefficient is implicit; `coeffs().len()` is the degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<C64>,
}

impl MonicPoly {
    /// Builds a monic polynomial from its non-leading coefficients, highest
    /// degree first.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("monic polynomial needs degree >= 1".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients of `z^(n-1)` down to `z^0`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, including the implicit leading one.
    pub fn coeff(&self, k: usize) -> C64 {
        let n = self.degree();
        match k {
            k if k == n => C64::new(1.0, 0.0),
            k if k < n => self.coeffs[n - 1 - k],
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .fold(C64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z`.
    fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(1.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |c_k| |z|^k`, the magnitude a rounding-level residual is measured against.
    fn eval_magnitude(&self, z: C64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().fold(1.0, |acc, c| acc * r + c.norm())
    }

    /// Substitutes `z -> z²`, doubling the degree.
    pub fn compose_square(&self) -> MonicPoly {
        let zero = C64::new(0.0, 0.0);
        let mut coeffs = Vec::with_capacity(2 * self.degree());
        for &c in &self.coeffs {
            coeffs.push(zero);
            coeffs.push(c);
        }
        MonicPoly { coeffs }
    }
}

/// Ordered labelling `(x0, ..., x4)` of the five roots of a quintic.
///
/// The order matters: relabelling changes `f` and the sign of `√disc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootTuple(pub [C64; 5]);

impl RootTuple {
    pub fn new(roots: [C64; 5]) -> Self {
        Self(roots)
    }

    pub fn roots(&self) -> &[C64; 5] {
        &self.0
    }

    pub fn scaled(&self, lambda: C64) -> Self {
        Self(self.0.map(|x| x * lambda))
    }

    /// `max(1, max |x_i|)`.
    pub fn scale(&self) -> f64 {
        self.0.iter().map(|x| x.norm()).fold(1.0, f64::max)
    }

    /// True when `|√disc|` falls below the degeneracy floor, i.e. two roots
    /// (nearly) coincide.
    pub fn is_degenerate(&self) -> bool {
        sqrt_discriminant(self).norm() < tolerance::DEGENERACY * self.scale().powi(10)
    }

    /// The monic quintic with these roots.
    pub fn quintic(&self) -> MonicPoly {
        poly_from_roots(&self.0).expect("five roots")
    }
}

/// Expands `Π (z - r_i)` by repeated multiplication.
pub fn poly_from_roots(roots: &[C64]) -> Result<MonicPoly> {
    if roots.is_empty() || roots.len() > MAX_DEGREE {
        return Err(Error::InvalidInput(format!(
            "poly_from_roots expects 1..={MAX_DEGREE} roots, got {}",
            roots.len()
        )));
    }
    // Ascending order while multiplying, leading one included.
    let mut acc = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![C64::new(0.0, 0.0); acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        acc = next;
    }
    acc.pop();
    acc.reverse();
    MonicPoly::new(acc)
}

/// Horner evaluation of `p` at `z`.
pub fn eval_poly(p: &MonicPoly, z: C64) -> C64 {
    p.eval(z)
}

/// Settings for the simultaneous (Aberth–Ehrlich) root iteration.
#[derive(Clone, Copy, Debug)]
pub struct RootFinder {
    pub max_iter: usize,
    /// Residual acceptance relative to `max(1, max|coeff|)`.
    pub residual_tol: f64,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            max_iter: 500,
            residual_tol: 1e-12,
        }
    }
}

impl RootFinder {
    /// A root estimate is accepted when its residual is below the absolute
    /// bound `residual_tol · max(1, max|coeff|)` or within a small multiple
    /// of the rounding error of evaluating `p` at that point.
    fn accepted(&self, p: &MonicPoly, z: C64, value: C64) -> bool {
        let abs_bound = self.residual_tol * p.max_coeff_norm().max(1.0);
        let rounding_bound = 64.0 * f64::EPSILON * p.eval_magnitude(z);
        let r = value.norm();
        r <= abs_bound || r <= rounding_bound
    }

    fn initial_guesses(p: &MonicPoly) -> Vec<C64> {
        let n = p.degree();
        // Geometric-mean style radius from the coefficient magnitudes.
        let radius = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max);
        let radius = if radius > 0.0 { radius } else { 1.0 };
        (0..n)
            .map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
            .collect()
    }

    pub fn find_roots(&self, p: &MonicPoly) -> Result<Vec<C64>> {
        let n = p.degree();
        if n > MAX_DEGREE {
            return Err(Error::InvalidInput(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        if n == 1 {
            return Ok(vec![-p.coeffs()[0]]);
        }

        let mut z = Self::initial_guesses(p);
        let mut done = vec![false; n];
        let mut polish = 2usize;
        for _ in 0..self.max_iter {
            for k in 0..n {
                let (val, der) = p.eval_with_derivative(z[k]);
                if val.norm() == 0.0 {
                    continue;
                }
                let newton = val / der;
                let repulsion: C64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = newton / (C64::new(1.0, 0.0) - newton * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[k] -= step;
                } else {
                    // Collision with another estimate; nudge off it.
                    let nudge = C64::new(1e-3, 1e-3) * z[k].norm().max(1e-3);
                    z[k] += nudge;
                }
            }
            for k in 0..n {
                done[k] = self.accepted(p, z[k], p.eval(z[k]));
            }
            if done.iter().all(|&d| d) {
                if polish == 0 {
                    return Ok(z);
                }
                polish -= 1;
            }
        }

        let worst = z.iter().map(|&r| p.eval(r).norm()).fold(0.0, f64::max);
        if z.iter().all(|&r| self.accepted(p, r, p.eval(r))) {
            return Ok(z);
        }
        Err(Error::numeric(
            format!("root iteration did not converge in {} steps", self.max_iter),
            worst,
        ))
    }
}

/// Roots of `p` with the default iteration settings.
pub fn find_roots(p: &MonicPoly) -> Result<Vec<C64>> {
    RootFinder::default().find_roots(p)
}

/// Power sums `p_1, ..., p_kmax`.
pub fn power_sums(values: &[C64], k_max: usize) -> Vec<C64> {
    let mut powers = values.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for k in 0..k_max {
        if k > 0 {
            for (p, v) in powers.iter_mut().zip(values) {
                *p *= v;
            }
        }
        out.push(powers.iter().sum());
    }
    out
}

/// Elementary symmetric functions `e_1, ..., e_n` by the product recurrence.
pub fn elementary_symmetric(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    let mut e = vec![C64::new(0.0, 0.0); n + 1];
    e[0] = C64::new(1.0, 0.0);
    for (i, &v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * v;
        }
    }
    e.remove(0);
    e
}

/// Recovers `e_1, ..., e_k` from `p_1, ..., p_k` with Newton's identities
/// `k e_k = Σ_{i=1..k} (-1)^(i-1) e_{k-i} p_i`.
pub fn elementary_from_power_sums(p: &[C64]) -> Vec<C64> {
    let mut e = vec![C64::new(1.0, 0.0)];
    for k in 1..=p.len() {
        let mut acc = C64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / k as f64);
    }
    e.remove(0);
    e
}

/// `Π_{i<j} (x_i − x_j)` in the tuple's own index order.
///
/// Odd relabellings negate the value, even ones preserve it; zero means a
/// repeated root.
pub fn sqrt_discriminant(rt: &RootTuple) -> C64 {
    let x = rt.roots();
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..5 {
        for j in i + 1..5 {
            acc *= x[i] - x[j];
        }
    }
    acc
}
