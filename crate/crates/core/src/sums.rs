//! Telescoping partial sums.
//!
//! If `p` annihilates `a` and `p(1) != 0`, dividing by `x - 1` gives
//! `p(x) = (x - 1) q(x) + p(1)`. Applied to `a` this reads `a(n) = b(n+1) - b(n)`
//! with `b(n) = -q(N) a(n) / p(1)`, so
//!
//! ```text
//! sum_{0 <= k < n} a(k) = b(n) - b(0).
//! ```
//!
//! Everything is generic over the coefficient [`Field`], so the same code
//! yields the identity for a concrete section and the uniform one in which
//! `L(m)` and `(-1)^m` are free symbols.

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{fmt_rational, rat, AlgebraError, Field, MultiRat, Rational, UniPoly};
use crate::cfinite::{CFiniteSeq, SeqError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SumError {
    #[error("cannot telescope with the zero polynomial")]
    ZeroPolynomial,
    #[error("p(1) = 0 for p = {0}; the sum does not telescope this way")]
    VanishingAtOne(String),
    #[error("the {m}-section has p(1) = 0; the sum does not telescope this way")]
    SectionVanishesAtOne { m: u64 },
    #[error("specialization makes {0} vanish")]
    VanishingSpecialization(String),
    #[error("the sequence is not annihilated by {0}")]
    NotAnnihilated(String),
    #[error("m must be odd, got {0}")]
    EvenIndex(u64),
    #[error("m must be positive")]
    ZeroIndex,
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `sum_{0 <= k < n} a(k) = b(n) - b(0)` with `b(n) = sum_i b_coeffs[i] a(n+i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SumIdentity<F: Field> {
    pub b_coeffs: Vec<F>,
    /// `p(1)`.
    pub scale: F,
    pub source_poly: UniPoly<F>,
}

pub fn polysum<F: Field>(p: &UniPoly<F>) -> Result<SumIdentity<F>, SumError> {
    if p.is_zero() {
        return Err(SumError::ZeroPolynomial);
    }
    let (q, r) = p.divrem(&UniPoly::linear(F::one()))?;
    let scale = r.coeff(0);
    let Some(inv) = scale.invert() else {
        return Err(SumError::VanishingAtOne(p.to_string()));
    };
    let factor = inv.negate();
    let b_coeffs = q.coeffs().iter().map(|c| c.multiply(&factor)).collect();
    Ok(SumIdentity {
        b_coeffs,
        scale,
        source_poly: p.clone(),
    })
}

/// How sequence references are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermStyle {
    /// `a(n+1)`
    Compact,
    /// `F(n + 1)`, the spacing used by `--compat`.
    Spaced,
}

fn term(name: &str, shift: usize, n: bool, style: TermStyle) -> String {
    match (n, shift, style) {
        (true, 0, _) => format!("{name}(n)"),
        (true, s, TermStyle::Compact) => format!("{name}(n+{s})"),
        (true, s, TermStyle::Spaced) => format!("{name}(n + {s})"),
        (false, s, _) => format!("{name}({s})"),
    }
}

fn difference(name: &str, shift: usize, style: TermStyle) -> String {
    format!(
        "{} - {}",
        term(name, shift, true, style),
        term(name, shift, false, style)
    )
}

/// Joins `(coefficient, shift)` pairs into `c_0 D_0 + c_1 D_1 + ...`, where
/// `D_i = a(n+i) - a(i)`. Unit coefficients are dropped, rational ones lead,
/// symbolic ones trail as in `(a(n) - a(0))*(1 - L)`.
fn weighted_differences<F: Field>(coeffs: &[F], name: &str, style: TermStyle) -> String {
    let mut out = String::new();
    for (shift, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let diff = difference(name, shift, style);
        // `wrap` marks a bare difference, which needs parentheses when negated
        let (negative, body, wrap) = match c.to_rational() {
            Some(r) => {
                let mag = r.abs();
                if Field::is_one(&mag) {
                    (r.is_negative(), diff, true)
                } else {
                    (
                        r.is_negative(),
                        format!("{}*({diff})", fmt_rational(&mag)),
                        false,
                    )
                }
            }
            None => {
                let text = c.to_string();
                let coeff = if c.needs_parens() || text.starts_with('-') {
                    format!("({text})")
                } else {
                    text
                };
                (false, format!("({diff})*{coeff}"), false)
            }
        };
        let body = if negative && wrap {
            format!("({body})")
        } else {
            body
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> SumIdentity<F> {
    /// The right-hand side `b(n) - b(0)` as text.
    ///
    /// When `p(1)` is a rational constant the coefficients are folded in;
    /// otherwise the quotient form `-(...) / (p(1))` is kept.
    pub fn render(&self, name: &str, style: TermStyle) -> String {
        if self.scale.to_rational().is_some() {
            return weighted_differences(&self.b_coeffs, name, style);
        }
        let (q, _) = self
            .source_poly
            .divrem(&UniPoly::linear(F::one()))
            .expect("x - 1 is monic");
        format!(
            "-({}) / ({})",
            weighted_differences(q.coeffs(), name, style),
            self.scale
        )
    }

    /// `b(n)` evaluated on concrete terms `a(n), a(n+1), ...`.
    fn b_value(&self, terms: &[F], n: usize) -> F {
        self.b_coeffs
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (i, c)| acc.add(&c.multiply(&terms[n + i])))
    }
}

impl SumIdentity<Rational> {
    /// The claimed partial sums `b(n) - b(0)` for `0 <= n <= n_max`.
    pub fn partial_sums(&self, a: &CFiniteSeq, n_max: usize) -> Vec<Rational> {
        let terms = a.terms(n_max + self.b_coeffs.len() + 1);
        let b0 = self.b_value(&terms, 0);
        (0..=n_max).map(|n| self.b_value(&terms, n) - &b0).collect()
    }
}

/// Substitutes rational values for the symbols of a uniform identity.
///
/// A symbolic `p(1) != 0` can still vanish at a specific point; that case,
/// and any coefficient whose denominator vanishes, is an error.
pub fn specialize(
    id: &SumIdentity<MultiRat>,
    values: &[Rational],
) -> Result<SumIdentity<Rational>, SumError> {
    let at = |c: &MultiRat| {
        c.eval(values)
            .map_err(|_| SumError::VanishingSpecialization(c.to_string()))
    };
    let scale = at(&id.scale)?;
    if scale.is_zero() {
        return Err(SumError::VanishingSpecialization(id.scale.to_string()));
    }
    Ok(SumIdentity {
        b_coeffs: id.b_coeffs.iter().map(at).collect::<Result<_, _>>()?,
        scale,
        source_poly: id.source_poly.try_map(at)?,
    })
}

/// The telescoping identity for `n -> a(mn)`.
pub fn uniform_msection_sum(a: &CFiniteSeq, m: u64) -> Result<SumIdentity<Rational>, SumError> {
    if m == 0 {
        return Err(SumError::ZeroIndex);
    }
    let p = a.msection(m, 0)?.charpoly();
    polysum(&p).map_err(|e| match e {
        SumError::VanishingAtOne(_) => SumError::SectionVanishesAtOne { m },
        other => other,
    })
}

/// Checks the identity against direct summation for `0 <= n <= n_max`.
///
/// Fails with [`SumError::NotAnnihilated`] when `a` is not killed by the
/// identity's source polynomial, which is a different situation from the
/// identity being false.
pub fn sum_identity_check(
    a: &CFiniteSeq,
    id: &SumIdentity<Rational>,
    n_max: usize,
) -> Result<bool, SumError> {
    if !a.is_annihilated_by(&id.source_poly) {
        return Err(SumError::NotAnnihilated(id.source_poly.to_string()));
    }
    let terms = a.terms(n_max + 1);
    let claimed = id.partial_sums(a, n_max);
    let mut running = rat(0);
    for (n, c) in claimed.iter().enumerate() {
        if *c != running {
            return Ok(false);
        }
        if n < terms.len() {
            running += &terms[n];
        }
    }
    Ok(true)
}

fn fibonacci() -> CFiniteSeq {
    CFiniteSeq::from_i64(&[1, 1], &[0, 1]).expect("valid")
}

fn lucas(m: u64) -> Rational {
    fibonacci()
        .companion()
        .and_then(|c| Ok(c.pow(m)?.trace()?))
        .expect("square companion")
}

/// `L_m * sum_{0 <= k < n} F(mk)^2 = F(mn) F(m(n-1))` for `1 <= n <= n_max`.
pub fn fib_square_sum_check(m: u64, n_max: usize) -> Result<bool, SumError> {
    if m.is_multiple_of(2) {
        return Err(SumError::EvenIndex(m));
    }
    let l = lucas(m);
    let m = m as usize;
    let f = fibonacci().terms(m * n_max + 1);
    let mut sum = rat(0);
    for n in 1..=n_max {
        sum += &f[m * (n - 1)] * &f[m * (n - 1)];
        if &l * &sum != &f[m * n] * &f[m * (n - 1)] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every intermediate expression of the hand simplification of
/// `sum F(mk)^2`, from the raw telescoped form down to
/// `F(mn) F(m(n-1)) / L_m`, compared with direct summation for odd `m` and
/// `1 <= n <= n_max`. Returns the number of the first failing step, if any.
pub fn fib_square_sum_chain(m: u64, n_max: usize) -> Result<Option<usize>, SumError> {
    if m.is_multiple_of(2) {
        return Err(SumError::EvenIndex(m));
    }
    let l = lucas(m);
    let m = m as usize;
    let f = fibonacci().terms(m * (n_max + 2) + 1);
    let fm2 = &f[m] * &f[m];
    let f2m2 = &f[2 * m] * &f[2 * m];
    let den = rat(10) * &fm2 - rat(8);
    let (c7, c4, c8) = (
        rat(7) - rat(10) * &fm2,
        rat(4) - rat(5) * &fm2,
        rat(8) - rat(10) * &fm2,
    );
    let mut sum = rat(0);
    for n in 1..=n_max {
        sum += &f[m * (n - 1)] * &f[m * (n - 1)];
        let (x0, x1, x2) = (&f[m * n], &f[m * (n + 1)], &f[m * (n + 2)]);
        let (s0, s1, s2) = (x0 * x0, x1 * x1, x2 * x2);
        let steps = [
            (&s0 * &c7 + (&s1 - &fm2) * &c4 + &s2 - &f2m2) / &den,
            (&s0 * &c7 + &s1 * &c4 + &s2) / &den,
            (&s0 * &c8 + &s1 * (&c4 + &l * &l) + rat(2) * x0 * &l * x1) / &den,
            x0 * (x1 - &l * x0) / &l,
            x0 * &f[m * (n - 1)] / &l,
        ];
        if let Some(i) = steps.iter().position(|s| *s != sum) {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// Outcome of `(5 F_m^2 - 4) F_m^2 - F_{2m}^2 = -8 F_m^2 ((-1)^m + 1) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishReport {
    /// Direct evaluation for `1 <= m <= m_max`.
    pub pointwise: bool,
    /// Both sides built as C-finite sequences in `m` and compared with
    /// `equals`, which covers every `m` at once.
    pub certified: bool,
}

pub fn vanish_identity_check(m_max: usize) -> VanishReport {
    let f = fibonacci().terms(2 * m_max + 1);
    let pointwise = (1..=m_max).all(|m| {
        let fm2 = &f[m] * &f[m];
        let lhs = (rat(5) * &fm2 - rat(4)) * &fm2 - &f[2 * m] * &f[2 * m];
        let even = if m % 2 == 0 { rat(1) } else { rat(0) };
        lhs == rat(-8) * fm2 * even
    });

    let fib = fibonacci();
    let f2 = fib.hadamard(&fib);
    let f4 = f2.hadamard(&f2);
    let f2m2 = f2.msection(2, 0).expect("positive step");
    let lhs = f4.scale(&rat(5)).sub(&f2.scale(&rat(4))).sub(&f2m2);
    // ((-1)^m + 1) / 2 = 1, 0, 1, 0, ...
    let even = CFiniteSeq::from_i64(&[0, 1], &[1, 0]).expect("valid");
    let rhs = f2.hadamard(&even).scale(&rat(-8));
    VanishReport {
        pointwise,
        certified: lhs.equals(&rhs),
    }
}

/// The closed Perrin section-sum formula
///
/// ```text
/// ((P(n) - 3)(1 - P(m) - c(m)) + P(n+1)(1 - P(m)) + P(n+2) - 2) / (P(m) + c(m))
/// ```
///
/// evaluated under one initial-value convention and one reading of the
/// right-hand indices.
#[derive(Clone, Debug, PartialEq)]
pub struct PerrinReading {
    /// `"trace"` for `P(0..3) = 3, 0, 2`, `"zero"` for `0, 0, 2`.
    pub convention: &'static str,
    /// `"section"` reads `P(n + i)` as `P(m(n + i))`; `"literal"` keeps `P(n + i)`.
    pub reading: &'static str,
    /// The `m` for which the formula matches `sum_{0 <= k < n} P(mk)` at
    /// every checked `n`.
    pub matching_m: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerrinSumReport {
    pub readings: Vec<PerrinReading>,
    /// The identity derived by [`uniform_msection_sum`] holds for both
    /// conventions at every checked `m` and `n`.
    pub derived_holds: bool,
    pub m_max: u64,
    pub n_max: usize,
}

pub fn perrin_sum_report(m_max: u64, n_max: usize) -> Result<PerrinSumReport, SumError> {
    let trace = CFiniteSeq::from_i64(&[0, 1, 1], &[3, 0, 2])?;
    let zero = CFiniteSeq::from_i64(&[0, 1, 1], &[0, 0, 2])?;
    let companion = trace.companion()?;
    let mut readings = Vec::new();
    let mut derived_holds = true;
    for (convention, p) in [("trace", &trace), ("zero", &zero)] {
        let top = (m_max as usize) * (n_max + 2) + 1;
        let terms = p.terms(top.max(n_max + 3));
        let mut section = Vec::new();
        let mut literal = Vec::new();
        for m in 1..=m_max {
            let rec = companion.pow(m)?.charpoly()?;
            let c = -rec.coeff(1);
            let pm = &terms[m as usize];
            let den = pm + &c;
            let mu = m as usize;
            let formula = |x0: &Rational, x1: &Rational, x2: &Rational| {
                ((x0 - rat(3)) * (rat(1) - pm - &c) + x1 * (rat(1) - pm) + x2 - rat(2)) / &den
            };
            let mut ok_section = !den.is_zero();
            let mut ok_literal = !den.is_zero();
            let mut sum = rat(0);
            for n in 1..=n_max {
                sum += &terms[mu * (n - 1)];
                if ok_section {
                    ok_section &=
                        formula(&terms[mu * n], &terms[mu * (n + 1)], &terms[mu * (n + 2)]) == sum;
                }
                if ok_literal {
                    ok_literal &= formula(&terms[n], &terms[n + 1], &terms[n + 2]) == sum;
                }
            }
            if ok_section {
                section.push(m);
            }
            if ok_literal {
                literal.push(m);
            }
            let seq = p.msection(m, 0)?;
            derived_holds &= match uniform_msection_sum(p, m) {
                Ok(id) => sum_identity_check(&seq, &id, n_max)?,
                Err(SumError::SectionVanishesAtOne { .. }) => false,
                Err(e) => return Err(e),
            };
        }
        readings.push(PerrinReading {
            convention,
            reading: "section",
            matching_m: section,
        });
        readings.push(PerrinReading {
            convention,
            reading: "literal",
            matching_m: literal,
        });
    }
    Ok(PerrinSumReport {
        readings,
        derived_holds,
        m_max,
        n_max,
    })
}
