//! Numerical laboratory for Kronecker's resolvent constructions on the
//! general quintic.
//!
//! The crate evaluates the twelve-valued function `f` of the five roots,
//! its labelled family `f, f_0, ..., f_4`, fits the coefficients `a, b, c` of
//! the degree-12 resolvent
//!
//! ```text
//! (f² + a)⁶ + 4a(f² + a)⁵ + 10b(f² + a)³ + 4c(f² + a) − 4ac + 5b² = 0
//! ```
//!
//! and builds the principal quintic `z⁵ + pz³ + qz + r` satisfied by
//! `Φ = (f − f_0)(f_1 − f_4)(f_2 − f_3)`. Every algebraic claim is checked
//! numerically in double precision against explicit tolerances.

pub mod brioschi;
pub mod cli;
pub mod error;
pub mod family;
pub mod instance;
pub mod matching;
pub mod perm;
pub mod poly;
pub mod resolvent;
pub mod tolerance;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
