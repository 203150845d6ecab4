//! Exact rational scalars and dense linear algebra over them.
//!
//! Everything downstream (probabilities, cochain values, coboundary matrices)
//! is a [`Rational`]. Row reduction never rounds, so ranks, kernels and span
//! membership are decided exactly.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Builds `num / den` from machine integers. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer `"p"`, or a decimal literal such as `"0.3"`
/// into an exact fraction. Decimals are read digit by digit, never through
/// a float.
pub fn parse_rational(text: &str) -> Result<Rational, NumericsError> {
    let s = text.trim();
    let bad = || NumericsError::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(bad)?;
        let den = parse_integer(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(NumericsError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if (whole.is_empty() && frac.is_empty())
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let magnitude = BigInt::from_str(&digits).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Dense row-major matrix of exact rationals. Zero rows or zero columns are
/// allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length;
    /// `cols` is needed to describe a matrix with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, NumericsError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(NumericsError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, entries })
    }

    /// Convenience constructor for integer literals in tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Matrix::from_rows(cols, rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(len: usize, columns: &[Vec<Rational>]) -> Result<Self, NumericsError> {
        let mut m = Matrix::zeros(len, columns.len());
        for (j, column) in columns.iter().enumerate() {
            if column.len() != len {
                return Err(NumericsError::DimensionMismatch { expected: len, found: column.len() });
            }
            for (i, v) in column.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, NumericsError> {
        if v.len() != self.cols {
            return Err(NumericsError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, NumericsError> {
        if self.cols != rhs.rows {
            return Err(NumericsError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("incompatible matrix dimensions")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|v| v.to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination. The result is the unique reduced row-echelon
/// form of `m`; pivot columns come back in increasing order.
pub fn rref(m: &Matrix) -> Rref {
    let mut r = m.clone();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..r.cols {
        if next_row == r.rows {
            break;
        }
        let Some(p) = (next_row..r.rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        r.swap_rows(p, next_row);
        let inv = r[(next_row, col)].recip();
        for j in col..r.cols {
            let v = &r[(next_row, j)] * &inv;
            r[(next_row, j)] = v;
        }
        for i in 0..r.rows {
            if i == next_row || r[(i, col)].is_zero() {
                continue;
            }
            let factor = r[(i, col)].clone();
            for j in col..r.cols {
                if r[(next_row, j)].is_zero() {
                    continue;
                }
                let v = &r[(i, j)] - &factor * &r[(next_row, j)];
                r[(i, j)] = v;
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    Rref { reduced: r, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Basis of `{v : m v = 0}`, one vector per free column: that free variable
/// is 1, the other free variables are 0, and pivot variables are solved for.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let Rref { reduced, pivots } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Solves `sum_k c_k basis[k] = target` exactly. Returns the solution with
/// every free coefficient set to zero, or `None` when `target` lies outside
/// the span.
pub fn in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Result<Option<Vec<Rational>>, NumericsError> {
    let mut columns = basis.to_vec();
    columns.push(target.to_vec());
    let with_target = Matrix::from_columns(target.len(), &columns)?;
    let Rref { reduced, pivots } = rref(&with_target);
    if pivots.last() == Some(&basis.len()) {
        return Ok(None);
    }
    let mut coefficients = vec![Rational::zero(); basis.len()];
    for (row, &p) in pivots.iter().enumerate() {
        coefficients[p] = reduced[(row, basis.len())].clone();
    }
    Ok(Some(coefficients))
}

/// Sum of `coefficients[k] * vectors[k]`; all vectors must have length `len`.
pub fn combine(len: usize, vectors: &[Vec<Rational>], coefficients: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (v, c) in vectors.iter().zip(coefficients) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Rescales a rational vector to coprime integers whose first nonzero entry
/// is positive. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return scaled;
    }
    let sign = match scaled.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    scaled.into_iter().map(|x| x / &gcd * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("5/8").unwrap(), ratio(5, 8));
        assert_eq!(parse_rational("10/16").unwrap(), ratio(5, 8));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.50").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1/0"), Err(NumericsError::ZeroDenominator("1/0".into())));
        for bad in ["", "abc", "1/2/3", "0.3e1", "1.2.3", ".", "--1", "1/-"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn printed_fractions_are_in_lowest_terms() {
        assert_eq!(parse_rational("4/20").unwrap().to_string(), "1/5");
        assert_eq!(parse_rational("2/-4").unwrap().to_string(), "-1/2");
        assert_eq!(parse_rational("27/27").unwrap().to_string(), "1");
    }

    #[test]
    fn single_row_already_reduced() {
        let m = Matrix::from_i64(&[&[1, -1, 1]]);
        let r = rref(&m);
        assert_eq!(r.reduced, m);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn triangle_vertex_to_edge_matrix_reduces() {
        let m = Matrix::from_i64(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 0, -1], &[0, 1, -1], &[0, 0, 0]]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = Matrix::zeros(2, 2);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());

        let no_rows = Matrix::zeros(0, 3);
        assert_eq!(rank(&no_rows), 0);
        assert_eq!(nullspace_basis(&no_rows).len(), 3);
        let no_cols = Matrix::zeros(4, 0);
        assert_eq!(rank(&no_cols), 0);
        assert!(nullspace_basis(&no_cols).is_empty());
    }

    #[test]
    fn nullspace_uses_free_variable_unit_assignments() {
        let m = Matrix::from_i64(&[&[1, -1, 1]]);
        assert_eq!(nullspace_basis(&m), vec![vecq(&[1, 1, 0]), vecq(&[-1, 0, 1])]);
        assert!(nullspace_basis(&Matrix::identity(2)).is_empty());
    }

    #[test]
    fn plugged_triangle_cocycle_space_is_three_dimensional() {
        let m = Matrix::from_i64(&[&[1, 0, -1, 0, 1, 0], &[0, 1, -1, 0, 0, 1], &[0, 0, 0, 1, -1, 1]]);
        let basis = nullspace_basis(&m);
        assert_eq!(basis.len(), 3);
        for v in &basis {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn span_membership() {
        // columns of the hollow triangle's vertex-to-edge coboundary
        let cols = vec![vecq(&[-1, -1, 0]), vecq(&[1, 0, -1]), vecq(&[0, 1, 1])];
        assert_eq!(in_span(&cols, &vecq(&[1, 0, 0])).unwrap(), None);
        assert_eq!(in_span(&cols, &vecq(&[0, 0, 0])).unwrap(), Some(vecq(&[0, 0, 0])));

        let basis = vec![vecq(&[1, 1, 0]), vecq(&[-1, 0, 1])];
        assert_eq!(in_span(&basis, &vecq(&[0, 1, 1])).unwrap(), Some(vecq(&[1, 1])));

        assert_eq!(in_span(&[], &vecq(&[0, 0])).unwrap(), Some(vec![]));
        assert_eq!(in_span(&[], &vecq(&[0, 1])).unwrap(), None);
        assert!(matches!(in_span(&[vecq(&[1, 2])], &vecq(&[1, 2, 3])), Err(NumericsError::DimensionMismatch { .. })));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![ratio(-1, 2), ratio(1, 3), int(0)];
        let expected: Vec<BigInt> = vec![3.into(), (-2).into(), 0.into()];
        assert_eq!(primitive_integer_vector(&v), expected);
        assert_eq!(primitive_integer_vector(&vecq(&[0, 4, -6])), vec![0.into(), 2.into(), (-3).into()]);
        assert_eq!(primitive_integer_vector(&vecq(&[0, 0])), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), Matrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert!(a.checked_mul(&Matrix::zeros(3, 1)).is_err());
        assert_eq!(Matrix::zeros(0, 2).checked_mul(&Matrix::zeros(2, 5)).unwrap(), Matrix::zeros(0, 5));
    }
}
