use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::{fmt_rational, AlgebraError, Field, Rational};

/// Exponent vector with trailing zeros trimmed, so `x0` and `x0*x1^0` agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new(
            (0..n)
                .map(|i| self.exponent(i) + other.exponent(i))
                .collect(),
        )
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::new(
            (0..n)
                .map(|i| self.exponent(i).min(other.exponent(i)))
                .collect(),
        )
    }

    /// Caller guarantees `divisor` divides `self`.
    fn div(&self, divisor: &Monomial) -> Monomial {
        Monomial::new(
            (0..self.0.len())
                .map(|i| self.exponent(i) - divisor.exponent(i))
                .collect(),
        )
    }

    /// Display order: lower total degree first, then earlier variables first.
    fn display_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// Ordered variable names shared by a family of [`MultiRat`] values.
pub type Symbols = Arc<[String]>;

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *terms.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(MPoly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .fold(c.clone(), |acc, (i, &e)| {
                        let v = values.get(i).cloned().unwrap_or_else(Rational::zero);
                        acc * num_traits::pow(v, e as usize)
                    })
            })
            .sum()
    }

    /// Largest monomial dividing every term.
    fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m), c.clone()))
                .collect(),
        }
    }

    fn sorted_for_display(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    /// Coefficient of the first term in display order.
    fn display_lead(&self) -> Option<&Rational> {
        self.sorted_for_display().first().map(|(_, c)| *c)
    }

    pub fn display_with(&self, names: Option<&Symbols>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.sorted_for_display() {
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(fmt_rational(&mag));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names
                    .and_then(|n| n.get(i).cloned())
                    .unwrap_or_else(|| format!("x{i}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Rational function `numerator / denominator` in several variables.
///
/// Only the common monomial and scalar content is stripped; no multivariate
/// gcd is computed. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct MultiRat {
    num: MPoly,
    den: MPoly,
    names: Option<Symbols>,
}

impl MultiRat {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den, None))
    }

    pub fn from_poly(num: MPoly, names: Option<Symbols>) -> Self {
        Self::normalized(num, MPoly::constant(Rational::one()), names)
    }

    pub fn with_names(mut self, names: &Symbols) -> Self {
        self.names = Some(names.clone());
        self
    }

    /// The `index`-th symbol of `names` as a rational function.
    pub fn symbol(names: &Symbols, index: usize) -> Self {
        Self::from_poly(MPoly::var(index), Some(names.clone()))
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn names(&self) -> Option<&Symbols> {
        self.names.as_ref()
    }

    fn normalized(num: MPoly, den: MPoly, names: Option<Symbols>) -> Self {
        if num.is_zero() {
            return MultiRat {
                num,
                den: MPoly::constant(Rational::one()),
                names,
            };
        }
        let content = num
            .monomial_content()
            .zip(den.monomial_content())
            .map(|(a, b)| a.gcd(&b))
            .unwrap_or_default();
        let (mut num, mut den) = (num.div_monomial(&content), den.div_monomial(&content));
        if let Some(c) = den.as_constant() {
            return MultiRat {
                num: num.scale(&c.recip()),
                den: MPoly::constant(Rational::one()),
                names,
            };
        }
        let lead = den.display_lead().cloned().expect("nonzero denominator");
        num = num.scale(&lead.recip());
        den = den.scale(&lead.recip());
        // numerator proportional to denominator
        if num.num_terms() == den.num_terms() {
            let (m, c) = den.terms().next().expect("nonzero");
            if let Some(nc) = num.terms.get(m) {
                let ratio = nc / c;
                if den.scale(&ratio) == num {
                    return MultiRat {
                        num: MPoly::constant(ratio),
                        den: MPoly::constant(Rational::one()),
                        names,
                    };
                }
            }
        }
        MultiRat { num, den, names }
    }

    fn merge_names(&self, other: &MultiRat) -> Option<Symbols> {
        self.names.clone().or_else(|| other.names.clone())
    }

    /// Substitutes rational values for the variables.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(values) / d)
    }

    /// The constant value when no variables remain.
    pub fn as_constant(&self) -> Option<Rational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }
}

impl PartialEq for MultiRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Field for MultiRat {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero(), None)
    }

    fn one() -> Self {
        Self::from_poly(MPoly::constant(Rational::one()), None)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        let names = self.merge_names(other);
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone(), names);
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
            names,
        )
    }

    fn negate(&self) -> Self {
        MultiRat {
            num: self.num.neg(),
            den: self.den.clone(),
            names: self.names.clone(),
        }
    }

    fn multiply(&self, other: &Self) -> Self {
        Self::normalized(
            self.num.mul(&other.num),
            self.den.mul(&other.den),
            self.merge_names(other),
        )
    }

    fn invert(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(
                self.den.clone(),
                self.num.clone(),
                self.names.clone(),
            ))
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(MPoly::constant(r.clone()), None)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn needs_parens(&self) -> bool {
        self.num.num_terms() > 1 || !self.is_polynomial()
    }
}

impl fmt::Display for MultiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names.as_ref();
        let num = self.num.display_with(names);
        if self.is_polynomial() {
            return f.write_str(&num);
        }
        let wrap = |s: String, n: usize| if n > 1 { format!("({s})") } else { s };
        write!(
            f,
            "{}/{}",
            wrap(num, self.num.num_terms()),
            wrap(self.den.display_with(names), self.den.num_terms())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;

    fn syms() -> Symbols {
        ["L", "s"].iter().map(|s| s.to_string()).collect()
    }

    fn l() -> MultiRat {
        MultiRat::symbol(&syms(), 0)
    }

    fn s() -> MultiRat {
        MultiRat::symbol(&syms(), 1)
    }

    fn c(v: i64) -> MultiRat {
        MultiRat::from_rational(&rat(v))
    }

    #[test]
    fn cancellation_by_cross_multiplication() {
        let lhs = l().sub(&c(1));
        let rhs = l()
            .multiply(&l())
            .sub(&c(1))
            .divide(&l().add(&c(1)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_normalization() {
        let neg = s().negate().divide(&c(-1)).unwrap();
        assert_eq!(neg, s());
        assert_eq!(neg.to_string(), "s");
    }

    #[test]
    fn nonzero_polynomial_is_not_zero() {
        let p = c(1).sub(&l()).add(&s());
        assert_ne!(p, MultiRat::zero());
        assert_eq!(p.to_string(), "1 - L + s");
    }

    #[test]
    fn monomial_content_is_stripped() {
        // (L^2 s) / (L s + L^2) -> (L s) / (s + L)
        let num = l().multiply(&l()).multiply(&s());
        let den = l().multiply(&s()).add(&l().multiply(&l()));
        let q = num.divide(&den).unwrap();
        assert_eq!(q.numerator(), &MPoly::var(0).mul(&MPoly::var(1)));
        assert_eq!(q.denominator().num_terms(), 2);
        assert_eq!(q.to_string(), "L*s/(L + s)");
    }

    #[test]
    fn evaluation_and_vanishing_denominator() {
        let q = c(1).divide(&c(1).sub(&l()).add(&s())).unwrap();
        assert_eq!(q.eval(&[rat(4), rat(-1)]).unwrap(), ratio(-1, 4));
        assert_eq!(q.eval(&[rat(2), rat(1)]), Err(AlgebraError::DivisionByZero));
        assert_eq!(
            MultiRat::new(MPoly::var(0), MPoly::zero()).unwrap_err(),
            AlgebraError::DivisionByZero
        );
    }

    fn arb_multirat() -> impl Strategy<Value = MultiRat> {
        let poly = prop::collection::vec((-3i64..4, 0u32..3, 0u32..2), 1..4).prop_map(|ts| {
            ts.into_iter().fold(MPoly::zero(), |acc, (c, a, b)| {
                acc.add(&MPoly::term(Monomial::new(vec![a, b]), rat(c)))
            })
        });
        (poly.clone(), poly)
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| MultiRat::new(n, d).unwrap().with_names(&syms()))
    }

    proptest! {
        #[test]
        fn equality_is_an_equivalence(a in arb_multirat(), b in arb_multirat(), k in 1i64..5) {
            prop_assert_eq!(&a, &a);
            prop_assert_eq!(a == b, b == a);
            // scaled copies are equal and transitivity holds through them
            let a2 = MultiRat::new(a.numerator().scale(&rat(k)), a.denominator().scale(&rat(k))).unwrap();
            let a3 = MultiRat::new(a.numerator().mul(&MPoly::var(1)), a.denominator().mul(&MPoly::var(1))).unwrap();
            prop_assert_eq!(&a, &a2);
            prop_assert_eq!(&a2, &a3);
            prop_assert_eq!(&a, &a3);
            if a == b {
                prop_assert_eq!(&a2, &b);
            }
        }

        #[test]
        fn field_axioms_spot_check(a in arb_multirat(), b in arb_multirat(), cc in arb_multirat()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.multiply(&b.add(&cc)), a.multiply(&b).add(&a.multiply(&cc)));
            if let Some(inv) = a.invert() {
                prop_assert!(a.multiply(&inv).is_one());
            }
        }
    }
}
