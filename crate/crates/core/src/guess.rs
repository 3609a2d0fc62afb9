//! Recovering a minimal recurrence from finitely many exact terms.
//!
//! Orders are tried bottom-up, `0, 1, ..., B`. At order `k` the sliding
//! windows of the data form the linear system
//! `a(n) = c_1 a(n-1) + ... + c_k a(n-k)` for every `n` in `k..len`, solved
//! exactly. The first consistent order is therefore minimal.
//!
//! When the caller knows that some annihilator of degree at most `B` exists
//! and supplies at least `2B` terms, the fit is a proof: applying the fitted
//! operator to the sequence yields a sequence that also obeys the degree-`B`
//! recurrence and starts with `B` zeros, so it is zero.

use thiserror::Error;

use crate::algebra::{LinearSolution, RatMatrix, Rational};
use crate::cfinite::{CFiniteSeq, Certification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("guessing with order bound {bound} needs at least {needed} terms, got {got}")]
    TooFewTerms {
        bound: usize,
        needed: usize,
        got: usize,
    },
    #[error("several recurrences of order {order} fit the data")]
    Ambiguous { order: usize },
}

#[derive(Clone, Debug)]
pub struct GuessResult {
    pub seq: CFiniteSeq,
    /// Terms needed to pin down the fit: `2 * order`.
    pub fitted_terms: usize,
    /// Further terms the fit was confirmed on.
    pub slack_terms: usize,
    pub certification: Certification,
}

/// Minimal-order recurrence of order at most `max_order` consistent with all
/// of `terms`, or `None` when no such recurrence exists.
///
/// `known_bound` asserts that the data comes from a sequence with an
/// annihilator of degree at most `max_order`; only then is the result proved.
pub fn guess_min_rec(
    terms: &[Rational],
    max_order: usize,
    known_bound: bool,
) -> Result<Option<GuessResult>, GuessError> {
    let needed = 2 * max_order;
    if terms.len() < needed {
        return Err(GuessError::TooFewTerms {
            bound: max_order,
            needed,
            got: terms.len(),
        });
    }
    let certification = if known_bound {
        Certification::Proved
    } else {
        Certification::Conjectured
    };
    for order in 0..=max_order {
        let Some(rec) = fit_order(terms, order)? else {
            continue;
        };
        let seq = CFiniteSeq::new(rec, terms[..order].to_vec())
            .expect("fitted recurrence reproduces the data")
            .with_certification(certification);
        return Ok(Some(GuessResult {
            seq,
            fitted_terms: 2 * order,
            slack_terms: terms.len() - 2 * order,
            certification,
        }));
    }
    Ok(None)
}

/// Recurrence coefficients of the given order fitting every window, if any.
pub fn fit_order(terms: &[Rational], order: usize) -> Result<Option<Vec<Rational>>, GuessError> {
    if order == 0 {
        let all_zero = terms.iter().all(num_traits::Zero::is_zero);
        return Ok(all_zero.then(Vec::new));
    }
    let rows = terms.len().saturating_sub(order);
    if rows == 0 {
        return Err(GuessError::Ambiguous { order });
    }
    let entries = (order..terms.len())
        .flat_map(|n| (1..=order).map(move |k| terms[n - k].clone()))
        .collect();
    let system = RatMatrix::new(rows, order, entries).expect("rows * order entries");
    let rhs = &terms[order..];
    match system.solve(rhs).expect("matching right-hand side") {
        LinearSolution::Unique(c) => Ok(Some(c)),
        LinearSolution::Inconsistent => Ok(None),
        LinearSolution::Underdetermined { .. } => Err(GuessError::Ambiguous { order }),
    }
}
