//! Test-only helpers: a double-double complex type used as an independent
//! high-precision oracle, and instance shorthands.

#![allow(dead_code)]

use kronecker_quintic::instance::random_instance;
use kronecker_quintic::poly::RootTuple;
use kronecker_quintic::C64;

/// Unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub fn from(z: C64) -> Self {
        DdC { re: Dd::from(z.re), im: Dd::from(z.im) }
    }
    pub fn add(self, o: DdC) -> DdC {
        DdC { re: self.re.add(o.re), im: self.im.add(o.im) }
    }
    pub fn sub(self, o: DdC) -> DdC {
        DdC { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }
    pub fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
    pub fn scale(self, s: Dd) -> DdC {
        DdC { re: self.re.mul(s), im: self.im.mul(s) }
    }
    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// sin(2nπ/5) for n = 1..4 to double-double precision (frozen from a
/// 50-digit evaluation).
pub fn sin_dd(n: usize) -> Dd {
    let s1 = Dd { hi: 0.9510565162951535, lo: 4.0934500900087295e-17 };
    let s2 = Dd { hi: 0.5877852522924731, lo: -7.93475083819002e-18 };
    match n % 5 {
        1 => s1,
        2 => s2,
        3 => s2.neg(),
        4 => s1.neg(),
        _ => Dd::default(),
    }
}

/// Direct 20-term summation of f in double-double arithmetic.
pub fn f_oracle(x: &[C64; 5]) -> C64 {
    let x: Vec<DdC> = x.iter().map(|&z| DdC::from(z)).collect();
    let mut acc = DdC::default();
    for m in 0..5 {
        for n in 1..=4 {
            let a = x[(m + n) % 5];
            let b = x[(m + 2 * n) % 5];
            let term = x[m].mul(a).mul(a).mul(b).mul(b).scale(sin_dd(n));
            acc = acc.add(term);
        }
    }
    acc.to_c64()
}

/// `[f, f_0, ..., f_4]` by the oracle, with the argument orders written out.
pub fn family_oracle(x: &[C64; 5]) -> [C64; 6] {
    let arg = |k: usize| -> [C64; 5] {
        [x[k % 5], x[(k + 3) % 5], x[(k + 4) % 5], x[(k + 1) % 5], x[(k + 2) % 5]]
    };
    [
        f_oracle(x),
        f_oracle(&arg(0)),
        f_oracle(&arg(1)),
        f_oracle(&arg(2)),
        f_oracle(&arg(3)),
        f_oracle(&arg(4)),
    ]
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

pub fn instance(seed: u64, index: u64) -> RootTuple {
    random_instance(seed, index).expect("generator")
}
