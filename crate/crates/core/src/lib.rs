//! Exact C-finite sequences, their uniform meta-recurrences, and telescoping
//! summation identities.
//!
//! The pieces, bottom-up:
//!
//! - [`algebra`]: rationals, dense polynomials over a generic field, rational
//!   matrices and multivariate rational functions.
//! - [`cfinite`]: the sequence type with closure operations and sections.
//! - [`guess`]: exact minimal-recurrence recovery from terms.
//! - [`meta`]: recurrences for `n -> a(mn)` whose coefficients are C-finite in
//!   `m`, and annihilators of `n -> a(ni) a(nj)`.
//! - [`sums`]: telescoping partial sums via `p(x) = (x - 1) q(x) + p(1)`.
//! - [`oeis`]: b-file parsing and prefix comparison.
//! - [`cli`]: the command-line front end.

pub mod algebra;
pub mod cfinite;
pub mod cli;
pub mod guess;
pub mod meta;
pub mod oeis;
pub mod sums;

pub use algebra::{Field, MultiRat, RatMatrix, Rational, UniPoly};
pub use cfinite::{CFiniteSeq, Certification};
