//! Meta-recurrences.
//!
//! For a sequence `a` of order `d` with companion matrix `M`, the section
//! `n -> a(mn)` is annihilated by the characteristic polynomial of `M^m`:
//!
//! ```text
//! a(mn) = c_1(m) a(m(n-1)) + ... + c_d(m) a(m(n-d))
//! ```
//!
//! Each `c_k(m)` is, up to sign, the `k`-th elementary symmetric function of
//! the `m`-th powers of the roots, hence a sum of `C(d, k)` exponentials in
//! `m`. Guessing each column of exact values with that bound therefore
//! certifies the whole family.
//!
//! Products `n -> a(ni) a(nj)` are handled the same way through
//! `charpoly(M^i (x) M^j)`.

use num_traits::One;
use thiserror::Error;

use crate::algebra::{binomial, fmt_rational, rat, AlgebraError, RatMatrix, Rational, UniPoly};
use crate::cfinite::{list, CFiniteSeq, Certification, SeqError};
use crate::guess::{guess_min_rec, GuessError, GuessResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetaError {
    #[error("the zero sequence has no meta-recurrence")]
    ZeroOrder,
    #[error("index must be positive")]
    ZeroIndex,
    #[error("coefficient index {k} is outside 1..={max}")]
    CoefficientOutOfRange { k: usize, max: usize },
    #[error("coefficient c_{k} is not C-finite of order <= {bound} on the sampled values{}", observed_note(.observed))]
    BoundViolated {
        k: usize,
        bound: usize,
        observed: Option<usize>,
    },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("expected an order-2 sequence, got order {0}")]
    NotSecondOrder(usize),
    #[error("characteristic polynomial {0} has a repeated root")]
    RepeatedRoot(String),
    #[error("expected i >= j, got i = {i}, j = {j}")]
    IndexOrder { i: u64, j: u64 },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Guess(#[from] GuessError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn observed_note(observed: &Option<usize>) -> String {
    match observed {
        Some(o) => format!(" (observed order {o})"),
        None => String::new(),
    }
}

/// Exact values `c_k(m)` for `1 <= k <= d`, `1 <= m <= m_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    columns: Vec<Vec<Rational>>,
}

impl CoeffTable {
    pub fn order(&self) -> usize {
        self.columns.len()
    }

    pub fn m_max(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    /// `c_k(m)`, both indices starting at 1.
    pub fn coeff(&self, k: usize, m: usize) -> &Rational {
        &self.columns[k - 1][m - 1]
    }

    /// `c_k(1), c_k(2), ...`.
    pub fn column(&self, k: usize) -> &[Rational] {
        &self.columns[k - 1]
    }

    /// `[c_1(m), ..., c_d(m)]`.
    pub fn row(&self, m: usize) -> Vec<Rational> {
        self.columns.iter().map(|c| c[m - 1].clone()).collect()
    }
}

/// Recurrence coefficients `c_k = -[x^(D-k)] p` of a monic polynomial.
fn rec_coeffs(p: &UniPoly<Rational>) -> Vec<Rational> {
    let d = p.degree().unwrap_or(0);
    (1..=d).map(|k| -p.coeff(d - k)).collect()
}

pub fn msection_coeff_table(a: &CFiniteSeq, m_max: usize) -> Result<CoeffTable, MetaError> {
    let d = a.order();
    if d == 0 {
        return Err(MetaError::ZeroOrder);
    }
    let companion = a.companion()?;
    let mut power = companion.clone();
    let mut columns = vec![Vec::with_capacity(m_max); d];
    for _ in 1..=m_max {
        for (col, c) in columns.iter_mut().zip(rec_coeffs(&power.charpoly()?)) {
            col.push(c);
        }
        power = power.mul(&companion)?;
    }
    Ok(CoeffTable { columns })
}

/// A certified family `{c_k(m)}` for the sections `n -> a(mn)`.
///
/// Each coefficient sequence is indexed from `m = 1`: term 0 is `c_k(1)`.
#[derive(Clone, Debug)]
pub struct MetaRecurrence {
    pub base: CFiniteSeq,
    pub coeff_seqs: Vec<CFiniteSeq>,
    pub order_bounds: Vec<usize>,
    pub certification: Certification,
    pub samples_checked: usize,
}

impl MetaRecurrence {
    pub fn order(&self) -> usize {
        self.coeff_seqs.len()
    }

    /// `c_k(m)` from the certified coefficient sequences.
    pub fn coeff(&self, k: usize, m: usize) -> Rational {
        assert!(m >= 1, "sections start at m = 1");
        self.coeff_seqs[k - 1].term(m - 1)
    }

    /// Checks `a(mn) = sum_k c_k(m) a(m(n-k))` for `d <= n < d + count`.
    pub fn validate(&self, m: usize, count: usize) -> bool {
        let d = self.order();
        let c: Vec<Rational> = (1..=d).map(|k| self.coeff(k, m)).collect();
        let terms = self.base.terms(m * (d + count) + 1);
        (d..d + count).all(|n| {
            let rhs: Rational = (1..=d).map(|k| &c[k - 1] * &terms[m * (n - k)]).sum();
            rhs == terms[m * n]
        })
    }

    /// The `--compat` `[[[init], [rec]], ...]` listing.
    pub fn compat(&self) -> String {
        let parts: Vec<String> = self.coeff_seqs.iter().map(CFiniteSeq::compat).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Guesses and certifies every `c_k(m)` of `a`.
///
/// Values are computed for `m = 1 ..= 2 * max_k C(d, k) + d`; column `k` is
/// guessed with the known bound `C(d, k)`, then the two following values of
/// every column and the meta-recurrence itself are re-checked.
pub fn meta_msection(a: &CFiniteSeq) -> Result<MetaRecurrence, MetaError> {
    let d = a.order();
    if d == 0 {
        return Err(MetaError::ZeroOrder);
    }
    let order_bounds: Vec<usize> = (1..=d).map(|k| binomial(d, k)).collect();
    let samples = 2 * order_bounds.iter().copied().max().unwrap_or(0) + d;
    let checked = samples + 2;
    let table = msection_coeff_table(a, checked)?;

    let mut coeff_seqs = Vec::with_capacity(d);
    for (k, &bound) in (1..=d).zip(&order_bounds) {
        let column = table.column(k);
        let found =
            guess_min_rec(&column[..samples], bound, true)?.ok_or(MetaError::BoundViolated {
                k,
                bound,
                observed: None,
            })?;
        if found.seq.terms(checked) != column {
            return Err(MetaError::ValidationFailed(format!(
                "c_{k} disagrees with the table beyond the fitted samples"
            )));
        }
        coeff_seqs.push(found.seq);
    }

    let meta = MetaRecurrence {
        base: a.clone(),
        coeff_seqs,
        order_bounds,
        certification: a.certification(),
        samples_checked: checked,
    };
    for m in 1..=checked {
        if !meta.validate(m, 3) {
            return Err(MetaError::ValidationFailed(format!(
                "meta-recurrence fails at m = {m}"
            )));
        }
    }
    Ok(meta)
}

/// Whether `c_1` obeys the recurrence of the base sequence.
pub fn c1_obeys_base_recurrence(meta: &MetaRecurrence) -> bool {
    meta.coeff_seqs[0].is_annihilated_by(&meta.base.charpoly())
}

/// Which sign law the last coefficient `c_d(m)` follows.
#[derive(Clone, Debug, PartialEq)]
pub struct TailSignReport {
    /// `(-1)^d` times the constant coefficient of the characteristic polynomial.
    pub omega: Rational,
    /// `c_d(m) = omega^m` for every checked `m`.
    pub matches_omega_power: bool,
    /// `c_d(m) = (-1)^(d+1) omega^m` for every checked `m`.
    pub matches_signed_omega_power: bool,
    pub checked: usize,
}

pub fn tail_sign_law(a: &CFiniteSeq, m_max: usize) -> Result<TailSignReport, MetaError> {
    let d = a.order();
    let table = msection_coeff_table(a, m_max)?;
    let p0 = a.charpoly().coeff(0);
    let sign = if d.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let omega = &sign * &p0;
    let flip = -&sign;
    let mut plain = true;
    let mut signed = true;
    let mut power = Rational::one();
    for m in 1..=m_max {
        power *= &omega;
        let c = table.coeff(d, m);
        plain &= *c == power;
        signed &= *c == &flip * &power;
    }
    Ok(TailSignReport {
        omega,
        matches_omega_power: plain,
        matches_signed_omega_power: signed,
        checked: m_max,
    })
}

/// Whether the base sequence itself equals the power-sum sequence `c_1(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConventionReport {
    pub matches: bool,
    /// `(m, a(m), c_1(m))` at the first disagreement.
    pub first_mismatch: Option<(usize, Rational, Rational)>,
    pub checked: usize,
}

pub fn base_matches_trace(a: &CFiniteSeq, m_max: usize) -> Result<ConventionReport, MetaError> {
    let table = msection_coeff_table(a, m_max)?;
    let terms = a.terms(m_max + 1);
    let first_mismatch = (1..=m_max)
        .find(|&m| terms[m] != *table.coeff(1, m))
        .map(|m| (m, terms[m].clone(), table.coeff(1, m).clone()));
    Ok(ConventionReport {
        matches: first_mismatch.is_none(),
        first_mismatch,
        checked: m_max,
    })
}

/// Checks, for `3 <= n <= n_max`, that
///
/// ```text
/// F(mn)^2 = (5 F(m)^2 + 3 (-1)^m) (F(m(n-1))^2 - (-1)^m F(m(n-2))^2) + (-1)^m F(m(n-3))^2
/// ```
///
/// using the term-wise square of the Fibonacci sequence as ground truth.
pub fn square_fibonacci_rec_holds(m: usize, n_max: usize) -> bool {
    let fib = CFiniteSeq::from_i64(&[1, 1], &[0, 1]).expect("valid");
    let sq = fib.hadamard(&fib).terms(m * n_max + 1);
    let sign = if m.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let lead = rat(5) * &sq[m] + rat(3) * &sign;
    (3..=n_max).all(|n| {
        let rhs = &lead * (&sq[m * (n - 1)] - &sign * &sq[m * (n - 2)]) + &sign * &sq[m * (n - 3)];
        rhs == sq[m * n]
    })
}

/// Annihilators of `n -> a(ni) a(nj)`.
#[derive(Clone, Debug)]
pub struct ProductAnnihilator {
    pub i: u64,
    pub j: u64,
    /// `charpoly(M^i (x) M^j)`, degree `d^2`; its roots are `r_k^i r_v^j`.
    pub poly: UniPoly<Rational>,
    /// Minimal annihilator of the product sequence.
    pub minimal_poly: UniPoly<Rational>,
    /// Number of distinct roots of the base characteristic polynomial.
    pub distinct_root_count: usize,
    /// `distinct_root_count * (2d - distinct_root_count)`.
    pub order_bound: usize,
    pub certification: Certification,
}

/// The sequence `n -> a(ni) a(nj)`, with a known annihilator.
pub fn product_sequence(a: &CFiniteSeq, i: u64, j: u64) -> Result<CFiniteSeq, MetaError> {
    if i == 0 || j == 0 {
        return Err(MetaError::ZeroIndex);
    }
    Ok(a.msection(i, 0)?.hadamard(&a.msection(j, 0)?))
}

fn kronecker_charpoly(m: &RatMatrix, i: u64, j: u64) -> Result<UniPoly<Rational>, MetaError> {
    Ok(RatMatrix::kronecker(&m.pow(i)?, &m.pow(j)?)?.charpoly()?)
}

pub fn product_annihilator(
    a: &CFiniteSeq,
    i: u64,
    j: u64,
) -> Result<ProductAnnihilator, MetaError> {
    let d = a.order();
    if d == 0 {
        return Err(MetaError::ZeroOrder);
    }
    let seq = product_sequence(a, i, j)?;
    let poly = kronecker_charpoly(&a.companion()?, i, j)?;
    if !seq.is_annihilated_by(&poly) {
        return Err(MetaError::ValidationFailed(format!(
            "charpoly of the Kronecker product does not kill a({i}n) a({j}n)"
        )));
    }
    let bound = d * d;
    let minimal =
        guess_min_rec(&seq.terms(2 * bound), bound, true)?.ok_or(MetaError::BoundViolated {
            k: 0,
            bound,
            observed: None,
        })?;
    let minimal_poly = minimal.seq.charpoly();
    let distinct = a.charpoly().distinct_root_count();
    let order_bound = distinct * (2 * d - distinct);
    if minimal.seq.order() > order_bound {
        return Err(MetaError::BoundViolated {
            k: 0,
            bound: order_bound,
            observed: Some(minimal.seq.order()),
        });
    }
    Ok(ProductAnnihilator {
        i,
        j,
        poly,
        minimal_poly,
        distinct_root_count: distinct,
        order_bound,
        certification: a.certification(),
    })
}

/// The coefficient sequence `i -> c_k(i, j)` at a fixed `j`.
#[derive(Clone, Debug)]
pub struct ProductCoeffs {
    pub k: usize,
    pub j: u64,
    pub bound: usize,
    /// `c_k(1, j), ..., c_k(i_max, j)`.
    pub samples: Vec<Rational>,
    pub guess: GuessResult,
    /// `c_k(i, j) = c_k(j, i)` held at every sampled `i`.
    pub symmetric: bool,
}

/// An order bound for `i -> c_k(i, j)` that always holds: the coefficient is
/// a sum of products of `k` roots `r^i` chosen with repetition, so at most
/// `C(d + k - 1, k)` distinct exponentials appear.
pub fn product_coeff_order_bound(d: usize, k: usize) -> usize {
    binomial(d + k - 1, k)
}

/// Guesses `i -> c_k(i, j)` with the bound `C(d, k)`.
///
/// The coefficients come from the degree-`d^2` annihilator
/// `charpoly(M^i (x) M^j)`, which is uniform in `i` (unlike the minimal
/// annihilator, whose degree drops when roots collide, e.g. at `i = j`).
/// A failure at this bound is reported as [`MetaError::BoundViolated`]
/// together with the order observed under [`product_coeff_order_bound`].
pub fn meta_product_coeffs(
    a: &CFiniteSeq,
    k: usize,
    j: u64,
    i_max: usize,
) -> Result<ProductCoeffs, MetaError> {
    let d = a.order();
    let stated = binomial(d, k);
    match meta_product_coeffs_with_bound(a, k, j, i_max, stated) {
        Err(MetaError::BoundViolated { k, bound, .. }) => {
            let rigorous = product_coeff_order_bound(d, k);
            let samples = i_max.max(2 * rigorous + 2);
            let observed = meta_product_coeffs_with_bound(a, k, j, samples, rigorous)
                .ok()
                .map(|r| r.guess.seq.order());
            Err(MetaError::BoundViolated { k, bound, observed })
        }
        other => other,
    }
}

/// Guesses `i -> c_k(i, j)` with an explicit order bound. The result is
/// proved only when `bound` is at least [`product_coeff_order_bound`].
pub fn meta_product_coeffs_with_bound(
    a: &CFiniteSeq,
    k: usize,
    j: u64,
    i_max: usize,
    bound: usize,
) -> Result<ProductCoeffs, MetaError> {
    let d = a.order();
    if d == 0 {
        return Err(MetaError::ZeroOrder);
    }
    if j == 0 {
        return Err(MetaError::ZeroIndex);
    }
    if k == 0 || k > d * d {
        return Err(MetaError::CoefficientOutOfRange { k, max: d * d });
    }
    let needed = 2 * bound + 2;
    if i_max < needed {
        return Err(MetaError::TooFewSamples { needed, got: i_max });
    }
    let m = a.companion()?;
    let coeff = |i: u64, j: u64| -> Result<Rational, MetaError> {
        Ok(rec_coeffs(&kronecker_charpoly(&m, i, j)?)[k - 1].clone())
    };
    let mut samples = Vec::with_capacity(i_max);
    let mut symmetric = true;
    for i in 1..=i_max as u64 {
        let c = coeff(i, j)?;
        symmetric &= coeff(j, i)? == c;
        samples.push(c);
    }
    let proved = bound >= product_coeff_order_bound(d, k);
    let guess = guess_min_rec(&samples, bound, proved)?.ok_or(MetaError::BoundViolated {
        k,
        bound,
        observed: None,
    })?;
    Ok(ProductCoeffs {
        k,
        j,
        bound,
        samples,
        guess,
        symmetric,
    })
}

/// The factorization of the product annihilator for an order-2 sequence
/// with distinct roots `r_1, r_2` and `i >= j`:
///
/// ```text
/// (x^2 - T(i+j) x + D^(i+j)) (x^2 - D^j T(i-j) x + D^(i+j))
/// ```
///
/// where `T(n) = r_1^n + r_2^n = trace(M^n)` and `D = r_1 r_2 = det M`.
/// Returns `(L, R)`, the first and second factor.
pub fn second_order_product_factors(
    a: &CFiniteSeq,
    i: u64,
    j: u64,
) -> Result<(UniPoly<Rational>, UniPoly<Rational>), MetaError> {
    if a.order() != 2 {
        return Err(MetaError::NotSecondOrder(a.order()));
    }
    if i == 0 || j == 0 {
        return Err(MetaError::ZeroIndex);
    }
    if i < j {
        return Err(MetaError::IndexOrder { i, j });
    }
    let p = a.charpoly();
    if !p.is_squarefree() {
        return Err(MetaError::RepeatedRoot(p.to_string()));
    }
    let m = a.companion()?;
    let det = -a.rec()[1].clone();
    let det_pow = |e: u64| num_traits::pow(det.clone(), e as usize);
    let trace = |e: u64| -> Result<Rational, MetaError> { Ok(m.pow(e)?.trace()?) };
    let both = det_pow(i + j);
    let l_factor = UniPoly::new(vec![both.clone(), -trace(i + j)?, Rational::one()]);
    let r_factor = UniPoly::new(vec![both, -(det_pow(j) * trace(i - j)?), Rational::one()]);
    let product = &l_factor * &r_factor;
    if !product_sequence(a, i, j)?.is_annihilated_by(&product) {
        return Err(MetaError::ValidationFailed(format!(
            "L * R = {product} does not annihilate a({i}n) a({j}n)"
        )));
    }
    Ok((l_factor, r_factor))
}

impl std::fmt::Display for MetaRecurrence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, seq) in self.coeff_seqs.iter().enumerate() {
            writeln!(
                f,
                "c_{}(m): init {} rec {} (order {} <= {})",
                k + 1,
                list(&seq.init()[..seq.order()]),
                list(seq.rec()),
                seq.order(),
                self.order_bounds[k]
            )?;
        }
        Ok(())
    }
}

/// Renders a row of the coefficient table as `c_1 c_2 ... c_d`.
pub fn fmt_row(row: &[Rational]) -> String {
    row.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
}
