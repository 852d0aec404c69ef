//! Permutations of five root labels.
//!
//! Convention: a permutation acts on a root tuple by pulling,
//! `apply(p, rt)[i] = rt[p(i)]`, and `compose(p, q)` is the permutation with
//! `apply(compose(p, q), rt) == apply(p, apply(q, rt))`.

use std::fmt;

use crate::poly::RootTuple;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm5 {
    image: [u8; 5],
}

impl Perm5 {
    pub const IDENTITY: Perm5 = Perm5 {
        image: [0, 1, 2, 3, 4],
    };

    /// Returns `None` unless `image` is a bijection on `0..5`.
    pub fn new(image: [u8; 5]) -> Option<Self> {
        let mut seen = [false; 5];
        for &i in &image {
            if i >= 5 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Self { image })
    }

    pub fn image(&self) -> [u8; 5] {
        self.image
    }

    pub fn at(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    /// `+1` for even, `-1` for odd permutations, from the inversion count.
    pub fn parity(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn inverse(&self) -> Perm5 {
        let mut image = [0u8; 5];
        for (i, &p) in self.image.iter().enumerate() {
            image[p as usize] = i as u8;
        }
        Perm5 { image }
    }

    pub fn fixed_points(&self) -> usize {
        (0..5).filter(|&i| self.at(i) == i).count()
    }

    /// The transposition of positions `i` and `j`.
    pub fn transposition(i: usize, j: usize) -> Perm5 {
        let mut image = Perm5::IDENTITY.image;
        image.swap(i, j);
        Perm5 { image }
    }
}

impl fmt::Debug for Perm5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm5{:?}", self.image)
    }
}

/// Relabels the tuple: `result[i] = rt[p(i)]`.
pub fn apply(p: &Perm5, rt: &RootTuple) -> RootTuple {
    let x = rt.roots();
    RootTuple::new(std::array::from_fn(|i| x[p.at(i)]))
}

/// Composition consistent with [`apply`].
pub fn compose(p: &Perm5, q: &Perm5) -> Perm5 {
    Perm5 {
        image: std::array::from_fn(|i| q.image[p.at(i)]),
    }
}

/// All 120 permutations in lexicographic order of their image arrays.
pub fn all_s5() -> Vec<Perm5> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [0u8, 1, 2, 3, 4];
    loop {
        out.push(Perm5 { image: cur });
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

/// The 60 even permutations, in the order of [`all_s5`].
pub fn all_a5() -> Vec<Perm5> {
    all_s5().into_iter().filter(Perm5::is_even).collect()
}

/// The 20 three-cycles (move exactly three labels, fix two).
pub fn three_cycles() -> Vec<Perm5> {
    all_s5()
        .into_iter()
        .filter(|p| p.fixed_points() == 2 && p.is_even())
        .collect()
}

fn next_permutation(a: &mut [u8; 5]) -> bool {
    let Some(i) = (0..4).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..5).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
