//! Exact rational arithmetic helpers and small dense linear algebra.
//!
//! Everything in this crate is computed over `BigRational`; nothing is ever
//! rounded.  Determinants use Bareiss fraction-free elimination on an integer
//! matrix obtained by clearing row denominators, linear systems use plain
//! Gauss–Jordan elimination over the rationals, and Pfaffians are expanded
//! along the first remaining row with memoisation on the set of live indices.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

/// Builds the rational `p/q`.  Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `p`, `-p`, or `p/q` (with `q > 0` after normalisation).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().ok()?;
    let q: BigInt = den.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Formats a rational as `p/q`, eliding a unit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    // `Ratio`'s `Display` already elides `/1` and keeps the sign on `p`.
    r.to_string()
}

/// Serde helper: writes a rational as its `p/q` string.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

/// Serde helper for optional rationals (`null` when absent).
pub fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

/// `(-1)^k` as an `i32`.
pub fn parity_sign(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Parity (+1 even, -1 odd) of a permutation given in one-line notation as
/// an arbitrary sequence of distinct, mutually comparable values.
///
/// Counting inversions directly keeps this independent of any relabelling.
pub fn permutation_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    parity_sign(inversions)
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a generator `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows.  Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self::from_fn(rows.len(), cols, |i, j| int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Matrix product.  Panics on a dimension mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc += a * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Exact determinant.  The empty (0×0) matrix has determinant 1.
    ///
    /// Each row is scaled by the lcm of its denominators, the resulting
    /// integer matrix is reduced with Bareiss' fraction-free elimination, and
    /// the row scalings are divided back out at the end.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let det = bareiss_determinant(&mut a);
        Rational::new(det, scale)
    }

    /// Solves `self · X = rhs` exactly.  Returns `None` when `self` is
    /// singular.  `self` must be square.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert!(self.is_square(), "solve with a non-square matrix");
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                b.swap_rows(pivot, col);
            }
            let inv = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &inv;
            }
            for j in 0..m {
                b[(col, j)] = &b[(col, j)] * &inv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                }
                for j in 0..m {
                    let t = &f * &b[(col, j)];
                    b[(r, j)] -= t;
                }
            }
        }
        Some(b)
    }

    /// Pfaffian of an antisymmetric matrix of even order (1 for 0×0).
    ///
    /// Expansion along the first live row,
    /// `Pf(A) = Σ_k (-1)^{k+1} a_{i,j_k} Pf(A without i, j_k)`, memoised on
    /// the bitmask of live indices.  Intended for orders up to about 20.
    pub fn pfaffian(&self) -> Rational {
        assert!(self.is_square(), "Pfaffian of a non-square matrix");
        assert!(self.rows <= 64, "Pfaffian order too large");
        if self.rows % 2 == 1 {
            return Rational::zero();
        }
        let full: u64 = if self.rows == 64 { u64::MAX } else { (1u64 << self.rows) - 1 };
        let mut memo = HashMap::new();
        self.pfaffian_rec(full, &mut memo)
    }

    fn pfaffian_rec(&self, live: u64, memo: &mut HashMap<u64, Rational>) -> Rational {
        if live == 0 {
            return Rational::one();
        }
        if let Some(v) = memo.get(&live) {
            return v.clone();
        }
        let i = live.trailing_zeros() as usize;
        let rest = live & !(1u64 << i);
        let mut acc = Rational::zero();
        let mut position = 0usize;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            position += 1;
            let a = &self[(i, j)];
            if a.is_zero() {
                continue;
            }
            let sub = self.pfaffian_rec(rest & !(1u64 << j), memo);
            let term = a * sub;
            if position % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        memo.insert(live, acc.clone());
        acc
    }

    /// Whether every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Converts to `i64` rows; `None` if any entry is non-integral or too big.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let x = &self[(i, j)];
                        if x.is_integer() {
                            x.numer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_rational(&self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Bareiss fraction-free elimination on a square integer matrix, in place.
///
/// Every intermediate division is exact, so entries stay integral and their
/// size is bounded by Hadamard-type minors rather than growing geometrically.
pub fn bareiss_determinant(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Absolute value of a rational.
pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz-formula determinant, used only as an independent check.
    fn leibniz(m: &Matrix) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = Rational::zero();
        for p in perms(n) {
            let mut term = int(permutation_sign(&p) as i64);
            for (i, &j) in p.iter().enumerate() {
                term *= &m[(i, j)];
            }
            acc += term;
        }
        acc
    }

    #[test]
    fn parses_and_formats_rationals() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&rat(3, 2)), "3/2");
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(fmt_rational(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(Matrix::zeros(0, 0).determinant(), int(1));
    }

    #[test]
    fn determinant_matches_leibniz() {
        let m = Matrix::from_fn(4, 4, |i, j| rat(((i * 7 + j * 3) % 5) as i64 - 2, (1 + (i + j) % 3) as i64));
        assert_eq!(m.determinant(), leibniz(&m));
        let singular = Matrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), int(0));
        let needs_pivot = Matrix::from_i64_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]);
        assert_eq!(needs_pivot.determinant(), int(-3));
    }

    #[test]
    fn solve_recovers_product() {
        let a = Matrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let x = Matrix::from_fn(3, 2, |i, j| rat(i as i64 - j as i64, 3));
        let b = a.mul(&x);
        assert_eq!(a.solve(&b), Some(x));
        let singular = Matrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.solve(&Matrix::identity(2)), None);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let n = 6;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rat(((i * 5 + j * 11) % 7) as i64 - 3, (1 + j % 2) as i64);
                a[(i, j)] = v.clone();
                a[(j, i)] = -v;
            }
        }
        let pf = a.pfaffian();
        assert_eq!(&pf * &pf, a.determinant());
        let mut two = Matrix::zeros(2, 2);
        two[(0, 1)] = int(5);
        two[(1, 0)] = int(-5);
        assert_eq!(two.pfaffian(), int(5));
        assert_eq!(Matrix::zeros(0, 0).pfaffian(), int(1));
    }

    #[test]
    fn permutation_parity() {
        assert_eq!(permutation_sign(&[1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[2, 1, 3]), -1);
        assert_eq!(permutation_sign(&[4, 2, 1, 3]), 1);
    }
}
