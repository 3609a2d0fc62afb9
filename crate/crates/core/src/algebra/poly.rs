use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, Rational};

/// Dense univariate polynomial, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree == len - 1` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, power: usize) -> Self {
        let mut coeffs = vec![F::zero(); power];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear(root: F) -> Self {
        Self::new(vec![root.negate(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.multiply(c)).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Option<Self> {
        let inv = self.leading()?.invert()?;
        Some(self.scale(&inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.multiply(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.multiply(&F::from_rational(&super::rat(i as i64))))
            .collect();
        Self::new(coeffs)
    }

    /// Euclidean division: `self = divisor * quotient + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let dlen = divisor.coeffs.len();
        let lead_inv = divisor
            .leading()
            .ok_or(AlgebraError::ZeroDivisor)?
            .invert()
            .ok_or(AlgebraError::NonInvertibleLeading)?;
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let factor = top.multiply(&lead_inv);
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&factor.multiply(dc));
            }
            quot[shift] = factor;
        }
        rem.truncate(dlen - 1);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(Self::zero)
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl FnMut(&F) -> Result<G, E>) -> Result<UniPoly<G>, E> {
        Ok(UniPoly::new(
            self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        ))
    }

    /// Renders with a chosen indeterminate name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, body) = if !c.needs_parens() {
                match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                }
            } else {
                (false, format!("({text})"))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = body == "1";
            match (power, unit) {
                (0, _) => out.push_str(&body),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&body);
                    out.push('*');
                }
            }
            match power {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{power}")),
            }
        }
        out
    }
}

impl UniPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    /// Number of distinct complex roots: the degree of the squarefree part.
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => {
                let g = self.gcd(&self.derivative());
                d - g.degree().unwrap_or(0)
            }
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree()
            .is_some_and(|d| self.distinct_root_count() == d)
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<'a, F: Field> Add<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;

    fn add(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }
}

impl<'a, F: Field> Sub<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;

    fn sub(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }
}

impl<'a, F: Field> Mul<&'a UniPoly<F>> for &'a UniPoly<F> {
    type Output = UniPoly<F>;

    fn mul(self, rhs: &'a UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.multiply(b));
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;

    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.iter().map(|c| c.negate()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr<UniPoly<F>> for UniPoly<F> {
            type Output = UniPoly<F>;

            fn $method(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, symbols, MultiRat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[-1, -1, 1]) * &UniPoly::one(), p(&[-1, -1, 1]));
    }

    #[test]
    fn divide_by_x_minus_one() {
        let (q, r) = p(&[-1, -1, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[-1]));

        let (q, r) = p(&[-2, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1]));
        assert_eq!(r, p(&[-1]));
    }

    #[test]
    fn division_by_zero_polynomial_is_an_error() {
        assert_eq!(
            p(&[1, 2]).divrem(&UniPoly::zero()),
            Err(AlgebraError::ZeroDivisor)
        );
    }

    #[test]
    fn symbolic_division_by_x_minus_one() {
        let syms = symbols(&["L", "s"]);
        let l = MultiRat::symbol(&syms, 0);
        let s = MultiRat::symbol(&syms, 1);
        let poly = UniPoly::new(vec![s.clone(), l.negate(), MultiRat::one()]);
        let (q, r) = poly.divrem(&UniPoly::linear(MultiRat::one())).unwrap();
        let one = MultiRat::one();
        assert_eq!(q, UniPoly::new(vec![one.sub(&l), one.clone()]));
        assert_eq!(r, UniPoly::constant(one.sub(&l).add(&s)));
        // reconstruct
        let back = &(&UniPoly::linear(one) * &q) + &r;
        assert_eq!(back, poly);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[1, -3, 1]).to_string(), "x^2 - 3*x + 1");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, -2]).to_string(), "-2*x");
    }

    #[test]
    fn squarefree_detection() {
        assert!(p(&[-1, -1, 1]).is_squarefree());
        // (x + 1)^2 (x - 2)
        let q = &p(&[1, 1]).pow(2) * &p(&[-2, 1]);
        assert_eq!(q.distinct_root_count(), 2);
        assert!(!q.is_squarefree());
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[2, 2]) * &p(&[-3, 1]);
        let b = &p(&[1, 1]) * &p(&[5, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.eval(&rat(3)), rat(0));
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = UniPoly<Rational>> {
        prop::collection::vec(-9i64..10, 0..max_len).prop_map(|c| UniPoly::from_ints(&c))
    }

    fn symbolic_poly() -> impl Strategy<Value = UniPoly<MultiRat>> {
        let syms = symbols(&["L", "s"]);
        prop::collection::vec((-4i64..5, -3i64..4, 0i64..3), 0..4).prop_map(move |cs| {
            let l = MultiRat::symbol(&syms, 0);
            let s = MultiRat::symbol(&syms, 1);
            UniPoly::new(
                cs.into_iter()
                    .map(|(a, b, c)| {
                        MultiRat::from_rational(&rat(a))
                            .add(&l.multiply(&MultiRat::from_rational(&rat(b))))
                            .add(&s.multiply(&MultiRat::from_rational(&rat(c))))
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn divrem_reconstructs_over_rationals(a in small_poly(7), d in small_poly(4)) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.divrem(&d).unwrap();
            prop_assert!(r.degree() < d.degree() || r.is_zero());
            prop_assert_eq!(&(&d * &q) + &r, a);
        }

        #[test]
        fn divrem_reconstructs_over_multirat(a in symbolic_poly(), d in symbolic_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.divrem(&d).unwrap();
            prop_assert!(r.is_zero() || r.degree() < d.degree());
            prop_assert_eq!(&(&d * &q) + &r, a);
        }
    }
}
