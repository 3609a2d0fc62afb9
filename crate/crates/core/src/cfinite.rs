//! C-finite sequences: linear recurrences with constant rational coefficients.
//!
//! A sequence of order `d` is stored as its recurrence
//! `a(n) = c_1 a(n-1) + ... + c_d a(n-d)` (valid for all `n >= d`) and at
//! least `d` initial terms. Its characteristic polynomial is
//! `p(x) = x^d - c_1 x^(d-1) - ... - c_d`, so the shift operator `N` acting as
//! `p(N)` kills the sequence. In terms of the roots `r_1..r_d` of `p`, the
//! recurrence coefficients are `c_k = (-1)^(k+1) e_k(r_1, ..., r_d)`.
//!
//! Nothing here extracts roots: raising roots to a power is done by powering
//! the companion matrix, and pairwise products of roots come from Kronecker
//! products of companion matrices.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{fmt_rational, AlgebraError, RatMatrix, Rational, UniPoly};
use crate::guess::{guess_min_rec, GuessError};

/// Whether a result is backed by a finite check that amounts to a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Proved,
    Conjectured,
}

impl Certification {
    /// Proved only when both inputs are.
    pub fn and(self, other: Certification) -> Certification {
        if self == Certification::Proved && other == Certification::Proved {
            Certification::Proved
        } else {
            Certification::Conjectured
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certification::Proved => "proved",
            Certification::Conjectured => "conjectured",
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqError {
    #[error("order {order} recurrence needs at least {order} initial terms, got {given}")]
    TooFewInitialTerms { order: usize, given: usize },
    #[error("initial term a({index}) = {found} violates the recurrence (expected {expected})")]
    InconsistentInitialTerm {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("the zero sequence has no companion matrix")]
    ZeroOrder,
    #[error("section step must be positive")]
    ZeroStep,
    #[error("section offset {r} must be smaller than the step {m}")]
    OffsetOutOfRange { m: u64, r: u64 },
    #[error("annihilator must be monic and nonzero")]
    NotMonic,
    #[error("root {0} listed twice in a closed form")]
    DuplicateRoot(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Guess(#[from] GuessError),
}

/// A C-finite sequence over the rationals.
#[derive(Clone, Debug)]
pub struct CFiniteSeq {
    rec: Vec<Rational>,
    init: Vec<Rational>,
    certification: Certification,
}

impl CFiniteSeq {
    /// Builds a sequence from its recurrence coefficients `[c_1, ..., c_d]`
    /// and initial terms. Extra initial terms are checked, not dropped.
    pub fn new(rec: Vec<Rational>, init: Vec<Rational>) -> Result<Self, SeqError> {
        let d = rec.len();
        if init.len() < d {
            return Err(SeqError::TooFewInitialTerms {
                order: d,
                given: init.len(),
            });
        }
        for n in d..init.len() {
            let expected = step(&rec, &init[..n]);
            if expected != init[n] {
                return Err(SeqError::InconsistentInitialTerm {
                    index: n,
                    expected: fmt_rational(&expected),
                    found: fmt_rational(&init[n]),
                });
            }
        }
        Ok(CFiniteSeq {
            rec,
            init,
            certification: Certification::Proved,
        })
    }

    pub fn from_i64(rec: &[i64], init: &[i64]) -> Result<Self, SeqError> {
        let conv = |v: &[i64]| v.iter().map(|&x| crate::algebra::rat(x)).collect();
        Self::new(conv(rec), conv(init))
    }

    /// Sequence annihilated by the monic polynomial `p`, with the given start.
    pub fn from_charpoly(p: &UniPoly<Rational>, init: Vec<Rational>) -> Result<Self, SeqError> {
        if !p.is_monic() {
            return Err(SeqError::NotMonic);
        }
        let d = p.degree().unwrap_or(0);
        let rec = (1..=d).map(|k| -p.coeff(d - k)).collect();
        Self::new(rec, init)
    }

    /// The identically zero sequence, of order 0.
    pub fn zero() -> Self {
        CFiniteSeq {
            rec: Vec::new(),
            init: Vec::new(),
            certification: Certification::Proved,
        }
    }

    pub fn with_certification(mut self, certification: Certification) -> Self {
        self.certification = certification;
        self
    }

    pub fn order(&self) -> usize {
        self.rec.len()
    }

    pub fn rec(&self) -> &[Rational] {
        &self.rec
    }

    /// The supplied initial terms (at least `order` of them).
    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn is_zero_order(&self) -> bool {
        self.rec.is_empty()
    }

    /// `x^d - c_1 x^(d-1) - ... - c_d`.
    pub fn charpoly(&self) -> UniPoly<Rational> {
        let d = self.order();
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = Rational::one();
        for (k, c) in self.rec.iter().enumerate() {
            coeffs[d - k - 1] = -c;
        }
        UniPoly::new(coeffs)
    }

    /// The first `count` terms.
    pub fn terms(&self, count: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for n in 0..count {
            let next = match self.init.get(n) {
                Some(v) => v.clone(),
                None => step(&self.rec, &out),
            };
            out.push(next);
        }
        out
    }

    pub fn term(&self, n: usize) -> Rational {
        self.terms(n + 1).pop().expect("at least one term")
    }

    /// Companion matrix: ones on the superdiagonal, last row `[c_d, ..., c_1]`.
    ///
    /// It maps the state `(a(n), ..., a(n+d-1))` to `(a(n+1), ..., a(n+d))`.
    pub fn companion(&self) -> Result<RatMatrix, SeqError> {
        let d = self.order();
        if d == 0 {
            return Err(SeqError::ZeroOrder);
        }
        let mut m = RatMatrix::zeros(d, d);
        for i in 0..d - 1 {
            m.set(i, i + 1, Rational::one());
        }
        for (k, c) in self.rec.iter().enumerate() {
            m.set(d - 1, d - 1 - k, c.clone());
        }
        Ok(m)
    }

    /// The section `n -> a(m n + r)`.
    ///
    /// The result keeps order `d`: its annihilator is the characteristic
    /// polynomial of `M^m`, whose roots are the `m`-th powers of the roots of
    /// `p`. No minimization is applied.
    pub fn msection(&self, m: u64, r: u64) -> Result<CFiniteSeq, SeqError> {
        if m == 0 {
            return Err(SeqError::ZeroStep);
        }
        if r >= m {
            return Err(SeqError::OffsetOutOfRange { m, r });
        }
        let d = self.order();
        if d == 0 {
            return Ok(CFiniteSeq::zero().with_certification(self.certification));
        }
        let p = self.companion()?.pow(m)?.charpoly()?;
        let (m, r) = (m as usize, r as usize);
        let all = self.terms(r + (d - 1) * m + 1);
        let init = (0..d).map(|n| all[r + n * m].clone()).collect();
        Ok(CFiniteSeq::from_charpoly(&p, init)?.with_certification(self.certification))
    }

    /// `a(n) + b(n)`.
    pub fn add(&self, other: &CFiniteSeq) -> CFiniteSeq {
        self.combine(other, |x, y| x + y)
    }

    /// `a(n) - b(n)`.
    pub fn sub(&self, other: &CFiniteSeq) -> CFiniteSeq {
        self.combine(other, |x, y| x - y)
    }

    fn combine(
        &self,
        other: &CFiniteSeq,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> CFiniteSeq {
        let p = &self.charpoly() * &other.charpoly();
        let count = p.degree().unwrap_or(0);
        let init = self
            .terms(count)
            .iter()
            .zip(other.terms(count).iter())
            .map(|(x, y)| op(x, y))
            .collect();
        let cert = self.certification.and(other.certification);
        CFiniteSeq::from_charpoly(&p, init)
            .expect("product of monic annihilators")
            .with_certification(cert)
            .minimize()
    }

    /// `c * a(n)`.
    pub fn scale(&self, c: &Rational) -> CFiniteSeq {
        if c.is_zero() {
            return CFiniteSeq::zero().with_certification(self.certification);
        }
        CFiniteSeq {
            rec: self.rec.clone(),
            init: self.init.iter().map(|v| v * c).collect(),
            certification: self.certification,
        }
    }

    /// Term-wise product `a(n) b(n)`, annihilated by the characteristic
    /// polynomial of the Kronecker product of the two companion matrices.
    pub fn hadamard(&self, other: &CFiniteSeq) -> CFiniteSeq {
        let cert = self.certification.and(other.certification);
        if self.is_zero_order() || other.is_zero_order() {
            return CFiniteSeq::zero().with_certification(cert);
        }
        let p = self.hadamard_annihilator(other);
        let count = p.degree().unwrap_or(0);
        let init = self
            .terms(count)
            .iter()
            .zip(other.terms(count).iter())
            .map(|(x, y)| x * y)
            .collect();
        CFiniteSeq::from_charpoly(&p, init)
            .expect("characteristic polynomials are monic")
            .with_certification(cert)
            .minimize()
    }

    fn hadamard_annihilator(&self, other: &CFiniteSeq) -> UniPoly<Rational> {
        let k = RatMatrix::kronecker(
            &self.companion().expect("nonzero order"),
            &other.companion().expect("nonzero order"),
        )
        .expect("companions are square");
        k.charpoly().expect("square")
    }

    /// Convolution `sum_{k=0}^{n} a(k) b(n-k)`.
    ///
    /// The generating function of `a` has denominator `1 - c_1 x - ... -
    /// c_d x^d` (the reversed characteristic polynomial), so the product of
    /// the two denominators yields a recurrence of order `d_a + d_b`.
    pub fn cauchy(&self, other: &CFiniteSeq) -> CFiniteSeq {
        let p = &self.charpoly() * &other.charpoly();
        let count = p.degree().unwrap_or(0);
        let (ta, tb) = (self.terms(count), other.terms(count));
        let init = (0..count)
            .map(|n| (0..=n).map(|k| &ta[k] * &tb[n - k]).sum())
            .collect();
        CFiniteSeq::from_charpoly(&p, init)
            .expect("product of monic annihilators")
            .with_certification(self.certification.and(other.certification))
            .minimize()
    }

    /// `p(N) a`, i.e. `n -> sum_i p_i a(n + i)`.
    pub fn apply_operator(&self, p: &UniPoly<Rational>) -> CFiniteSeq {
        let d = self.order();
        let init = apply_to_terms(p, &self.terms(d + p.coeffs().len()), d);
        CFiniteSeq {
            rec: self.rec.clone(),
            init,
            certification: self.certification,
        }
        .minimize()
    }

    /// `n -> a(n + k)`.
    pub fn shift(&self, k: usize) -> CFiniteSeq {
        self.apply_operator(&UniPoly::monomial(Rational::one(), k))
    }

    /// Rigorous annihilation test: `p(N) a` vanishes identically iff its first
    /// `order(a)` terms vanish, because it satisfies `a`'s own recurrence.
    pub fn is_annihilated_by(&self, p: &UniPoly<Rational>) -> bool {
        let d = self.order();
        apply_to_terms(p, &self.terms(d + p.coeffs().len()), d)
            .iter()
            .all(Zero::is_zero)
    }

    /// Equivalent sequence of minimal order.
    ///
    /// The current recurrence bounds the minimal order by `d`, so the first
    /// `2d` terms determine the minimal recurrence and the result stays proved.
    pub fn minimize(&self) -> CFiniteSeq {
        let d = self.order();
        if d == 0 {
            return self.clone();
        }
        let found = guess_min_rec(&self.terms(2 * d), d, true)
            .expect("2d terms are enough for bound d")
            .expect("the sequence's own recurrence fits");
        found.seq.with_certification(self.certification)
    }

    /// Whether the two sequences agree everywhere. Comparing
    /// `order(a) + order(b)` terms suffices, since `a - b` is annihilated by
    /// the product of both characteristic polynomials.
    pub fn equals(&self, other: &CFiniteSeq) -> bool {
        let n = self.order() + other.order();
        self.terms(n) == other.terms(n)
    }

    /// The `--compat` `[[init], [rec]]` shape, with `order` initial terms.
    pub fn compat(&self) -> String {
        format!(
            "[{}, {}]",
            list(&self.init[..self.order()]),
            list(&self.rec)
        )
    }
}

impl fmt::Display for CFiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compat())
    }
}

pub(crate) fn list(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// Next term from the recurrence, given all previous terms.
fn step(rec: &[Rational], prev: &[Rational]) -> Rational {
    let n = prev.len();
    rec.iter()
        .enumerate()
        .map(|(k, c)| c * &prev[n - 1 - k])
        .sum()
}

/// `(p(N) t)(n)` for `n < count`, where `t` holds enough terms.
fn apply_to_terms(p: &UniPoly<Rational>, t: &[Rational], count: usize) -> Vec<Rational> {
    (0..count)
        .map(|n| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * &t[n + i])
                .sum()
        })
        .collect()
}

/// Exponential-polynomial closed form `sum_k f_k(n) r_k^n`, described by each
/// root and the highest power of `n` multiplying it.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSpec {
    pub terms: Vec<(Rational, u32)>,
}

/// `prod (x - r)^(max_power + 1)`: a term `n^j r^n` is killed by
/// `(x - r)^(j + 1)`.
pub fn annihilator_from_closed_form(spec: &ClosedFormSpec) -> Result<UniPoly<Rational>, SeqError> {
    let mut acc = UniPoly::one();
    for (i, (root, power)) in spec.terms.iter().enumerate() {
        if spec.terms[..i].iter().any(|(r, _)| r == root) {
            return Err(SeqError::DuplicateRoot(fmt_rational(root)));
        }
        acc = &acc * &UniPoly::linear(root.clone()).pow(power + 1);
    }
    Ok(acc)
}
