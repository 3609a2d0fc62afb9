//! Exact arithmetic substrate.
//!
//! Everything here is exact: rationals are arbitrary precision, polynomials
//! are generic over a [`Field`], and matrices carry rational entries. The
//! symbolic coefficient field [`MultiRat`] lets the same polynomial code run
//! over expressions such as `1 - L + s`.

mod matrix;
mod multirat;
mod poly;

pub use matrix::{LinearSolution, RatMatrix};
pub use multirat::{MPoly, Monomial, MultiRat, Symbols};
pub use poly::UniPoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in canonical form (positive denominator, reduced).
pub type Rational = BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds a shared symbol table from names.
pub fn symbols<S: AsRef<str>>(names: &[S]) -> Symbols {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeading,
}

/// The coefficient-field contract shared by [`Rational`] and [`MultiRat`].
///
/// Methods take references and return fresh values; no instance carries
/// interior mutability.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn multiply(&self, other: &Self) -> Self;
    /// `None` exactly when `self` is zero.
    fn invert(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    fn divide(&self, other: &Self) -> Option<Self> {
        other.invert().map(|inv| self.multiply(&inv))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Whether the printed form needs parentheses when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn multiply(&self, other: &Self) -> Self {
        self * other
    }

    fn invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn needs_parens(&self) -> bool {
        // "-3/2" as a factor reads fine; only fractions get wrapped
        !self.is_integer() && self.is_negative()
    }
}

/// Binomial coefficient as a machine integer.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_formatting_suppresses_unit_denominator() {
        assert_eq!(fmt_rational(&rat(-7)), "-7");
        assert_eq!(fmt_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(30, 15), 155117520);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| ratio(p, q))
    }

    fn is_canonical(r: &Rational) -> bool {
        use num_integer::Integer;
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    proptest! {
        #[test]
        fn canonical_form_is_preserved(a in small_rat(), b in small_rat()) {
            prop_assert!(is_canonical(&(&a + &b)));
            prop_assert!(is_canonical(&(&a - &b)));
            prop_assert!(is_canonical(&(&a * &b)));
            if !Zero::is_zero(&b) {
                prop_assert!(is_canonical(&(&a / &b)));
            }
        }
    }
}
