use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{fmt_rational, rat, AlgebraError, Rational, UniPoly};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// Consistent, but with free variables.
    Underdetermined {
        rank: usize,
    },
    Inconsistent,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize, AlgebraError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::ShapeMismatch("addition".into()));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^e` by binary exponentiation; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> Result<RatMatrix, AlgebraError> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product; block `(p, q)` of the result is `a[p][q] * b`.
    pub fn kronecker(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        let na = a.require_square()?;
        let nb = b.require_square()?;
        let n = na * nb;
        let mut out = Self::zeros(n, n);
        for p in 0..na {
            for q in 0..na {
                let apq = a.get(p, q);
                if apq.is_zero() {
                    continue;
                }
                for r in 0..nb {
                    for s in 0..nb {
                        out.set(p * nb + r, q * nb + s, apq * b.get(r, s));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Rational, AlgebraError> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.get(i, i).clone()).sum())
    }

    /// Characteristic polynomial `det(xI - M)`, monic of degree `n`.
    ///
    /// Uses the Faddeev-LeVerrier recursion; its only divisions are by the
    /// step index, which is exact over the rationals.
    pub fn charpoly(&self) -> Result<UniPoly<Rational>, AlgebraError> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut aux = Self::zeros(n, n);
        for k in 1..=n {
            // aux_k = M aux_{k-1} + c_{n-k+1} I
            aux = self.mul(&aux)?;
            for i in 0..n {
                let entry = &mut aux.entries[i * n + i];
                *entry += &coeffs[n - k + 1];
            }
            let tr = self.mul(&aux)?.trace()?;
            coeffs[n - k] = -tr / rat(k as i64);
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Substitutes the matrix into a polynomial.
    pub fn eval_poly(&self, p: &UniPoly<Rational>) -> Result<RatMatrix, AlgebraError> {
        let n = self.require_square()?;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Solves `self * x = rhs` exactly.
    ///
    /// Rows are cleared of denominators and reduced with fraction-free
    /// (Bareiss) elimination, so every intermediate division is exact.
    pub fn solve(&self, rhs: &[Rational]) -> Result<LinearSolution, AlgebraError> {
        if rhs.len() != self.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let width = self.cols + 1;
        let mut work: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&Rational> = self.entries[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .chain(std::iter::once(&rhs[i]))
                    .collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect();

        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(row, p);
            for i in row + 1..self.rows {
                for j in col + 1..width {
                    let v = &work[row][col] * &work[i][j] - &work[i][col] * &work[row][j];
                    debug_assert!((&v % &prev).is_zero());
                    work[i][j] = v / &prev;
                }
                work[i][col] = BigInt::zero();
            }
            prev = work[row][col].clone();
            pivots.push(col);
            row += 1;
        }

        let rank = pivots.len();
        if work[rank..].iter().any(|r| !r[self.cols].is_zero()) {
            return Ok(LinearSolution::Inconsistent);
        }
        if rank < self.cols {
            return Ok(LinearSolution::Underdetermined { rank });
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &col) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::from_integer(work[k][self.cols].clone());
            for j in col + 1..self.cols {
                acc -= Rational::from_integer(work[k][j].clone()) * &x[j];
            }
            x[col] = acc / Rational::from_integer(work[k][col].clone());
        }
        Ok(LinearSolution::Unique(x))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|c| fmt_rational(self.get(r, c)))
                .collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use proptest::prelude::*;

    fn fib() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(fib().charpoly().unwrap(), UniPoly::from_ints(&[-1, -1, 1]));
        assert_eq!(
            RatMatrix::identity(3).charpoly().unwrap(),
            UniPoly::from_ints(&[-1, 1]).pow(3)
        );
        let sq = RatMatrix::from_i64(&[&[1, 1], &[1, 2]]).unwrap();
        assert_eq!(sq.charpoly().unwrap(), UniPoly::from_ints(&[1, -3, 1]));
    }

    #[test]
    fn charpoly_rejects_non_square() {
        let m = RatMatrix::zeros(2, 3);
        assert_eq!(
            m.charpoly(),
            Err(AlgebraError::NotSquare { rows: 2, cols: 3 })
        );
        assert!(m.pow(2).is_err());
        assert!(RatMatrix::kronecker(&m, &fib()).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(fib().pow(0).unwrap(), RatMatrix::identity(2));
        assert_eq!(
            fib().pow(2).unwrap(),
            RatMatrix::from_i64(&[&[1, 1], &[1, 2]]).unwrap()
        );
        // compare against repeated multiplication
        let mut slow = RatMatrix::identity(2);
        for _ in 0..5 {
            slow = slow.mul(&fib()).unwrap();
        }
        assert_eq!(fib().pow(5).unwrap(), slow);
        assert_eq!(slow, RatMatrix::from_i64(&[&[3, 5], &[5, 8]]).unwrap());
    }

    #[test]
    fn kronecker_examples() {
        let two = RatMatrix::from_i64(&[&[2]]).unwrap();
        let three = RatMatrix::from_i64(&[&[3]]).unwrap();
        assert_eq!(
            RatMatrix::kronecker(&two, &three).unwrap(),
            RatMatrix::from_i64(&[&[6]]).unwrap()
        );
        assert_eq!(
            RatMatrix::kronecker(&RatMatrix::identity(2), &RatMatrix::identity(2)).unwrap(),
            RatMatrix::identity(4)
        );
        let k = RatMatrix::kronecker(&fib(), &fib()).unwrap();
        let expected = &UniPoly::from_ints(&[1, -3, 1]) * &UniPoly::from_ints(&[1, 1]).pow(2);
        assert_eq!(k.charpoly().unwrap(), expected);
    }

    #[test]
    fn solve_cases() {
        let a = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(
            a.solve(&[rat(3), rat(1)]).unwrap(),
            LinearSolution::Unique(vec![rat(2), rat(1)])
        );
        let singular = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(
            singular.solve(&[rat(1), rat(2)]).unwrap(),
            LinearSolution::Underdetermined { rank: 1 }
        );
        assert_eq!(
            singular.solve(&[rat(1), rat(3)]).unwrap(),
            LinearSolution::Inconsistent
        );
        let frac = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(-1, 5)],
            vec![rat(1), ratio(-2, 15)],
        ])
        .unwrap();
        let x = vec![ratio(3, 7), ratio(-5, 2)];
        let rhs: Vec<Rational> = (0..3)
            .map(|i| frac.get(i, 0) * &x[0] + frac.get(i, 1) * &x[1])
            .collect();
        assert_eq!(frac.solve(&rhs).unwrap(), LinearSolution::Unique(x));
    }

    fn small_square(max: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec((-5i64..6, 1i64..4), n * n).prop_map(move |v| {
                RatMatrix::new(n, n, v.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap()
            })
        })
    }

    /// Monic polynomial of degree `n` whose roots have the given power sums
    /// `p_1..p_n` (Newton's identities).
    fn poly_from_power_sums(n: usize, power_sums: &[Rational]) -> UniPoly<Rational> {
        let mut e = vec![Rational::one()];
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let term = &e[k - i] * &power_sums[i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / rat(k as i64));
        }
        // prod (x - r) = sum (-1)^k e_k x^{n-k}
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, ek) in e.into_iter().enumerate() {
            coeffs[n - k] = if k % 2 == 0 { ek } else { -ek };
        }
        UniPoly::new(coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cayley_hamilton(m in small_square(5)) {
            let p = m.charpoly().unwrap();
            prop_assert!(p.is_monic());
            prop_assert_eq!(p.degree(), Some(m.rows()));
            prop_assert!(m.eval_poly(&p).unwrap().is_zero());
        }

        #[test]
        fn kronecker_charpoly_matches_pairwise_power_sums(a in small_square(3), b in small_square(2)) {
            // power sums of the pairwise products r_i * s_j are tr(A^k) tr(B^k)
            let n = a.rows() * b.rows();
            let sums: Vec<Rational> = (1..=n as u64)
                .map(|k| a.pow(k).unwrap().trace().unwrap() * b.pow(k).unwrap().trace().unwrap())
                .collect();
            let k = RatMatrix::kronecker(&a, &b).unwrap();
            prop_assert_eq!(k.charpoly().unwrap(), poly_from_power_sums(n, &sums));
        }
    }
}
