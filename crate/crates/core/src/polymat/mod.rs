//! Dense matrices over the rings used throughout the crate: `Q[x]`, Laurent polynomials,
//! Q and Q(x).
//!
//! Convention: lattice bases are stored as columns and all basis changes act by right
//! multiplication (column operations). Hermite reduction therefore produces `M·U = H`.

mod field;
mod hermite;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{bareiss_det, LaurentPoly, Rat, RatFunc, UniPoly};

pub use field::{Field, FieldMatrixExt};
pub use hermite::HermiteResult;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("determinant {0} is not a nonzero constant")]
    NotUnimodular(String),
}

/// Commutative ring operations needed by the generic matrix code.
pub trait Ring: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

macro_rules! impl_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn one() -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
        }
    };
}

impl_ring!(Rat);
impl_ring!(UniPoly);
impl_ring!(LaurentPoly);
impl_ring!(RatFunc);

/// Rectangular matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<UniPoly>;
pub type LaurentMatrix = Matrix<LaurentPoly>;
pub type RatMatrix = Matrix<Rat>;
pub type FracMatrix = Matrix<RatFunc>;

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(MatrixError::Ragged { expected: ncols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Matrix<T> {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Matrix<T> {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: Vec<T>) -> Matrix<T> {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn try_mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hconcat(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::Dimension("row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn columns_range(&self, range: std::ops::Range<usize>) -> Matrix<T> {
        let start = range.start;
        Matrix::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)].clone())
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[target] += factor · col[source]`
    pub fn add_column_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self[(i, source)];
            if !s.is_zero() {
                let v = self[(i, target)].add(&factor.mul(s));
                self[(i, target)] = v;
            }
        }
    }

    /// `row[target] += factor · row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if !s.is_zero() {
                let v = self[(target, j)].add(&factor.mul(s));
                self[(target, j)] = v;
            }
        }
    }

    pub fn scale_column(&mut self, j: usize, factor: &T) {
        for i in 0..self.rows {
            let v = self[(i, j)].mul(factor);
            self[(i, j)] = v;
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &T) {
        for j in 0..self.cols {
            let v = self[(i, j)].mul(factor);
            self[(i, j)] = v;
        }
    }

    /// Minor obtained by deleting one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Matrix<T> {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let ii = if i < row { i } else { i + 1 };
            let jj = if j < col { j } else { j + 1 };
            self[(ii, jj)].clone()
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

impl<T: Ring + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de, T: Ring + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Matrix<T>, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl PolyMatrix {
    pub fn from_int_rows(rows: &[&[&[i64]]]) -> PolyMatrix {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|c| UniPoly::from_ints(c)).collect()).collect(),
        )
        .expect("well-formed literal")
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<UniPoly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(bareiss_det(self.to_rows()))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(UniPoly::degree).max()
    }

    /// Exact inverse of a matrix whose determinant is a nonzero constant.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix, MatrixError> {
        let det = self.determinant()?;
        if det.degree() != Some(0) {
            return Err(MatrixError::NotUnimodular(det.to_string()));
        }
        // For a unimodular input the Hermite form is the identity, so U is the inverse.
        let HermiteResult { reduced, transform } = self.hermite_form()?;
        debug_assert!(reduced.is_identity());
        Ok(transform)
    }

    /// Entries read as polynomials in `x`.
    pub fn to_laurent(&self) -> LaurentMatrix {
        self.map(|p| LaurentPoly::from_poly(p, 0))
    }

    /// Entries read as polynomials in `1/x`.
    pub fn to_laurent_inverse(&self) -> LaurentMatrix {
        self.map(LaurentPoly::from_poly_inverse)
    }

    pub fn to_frac(&self) -> FracMatrix {
        self.map(|p| RatFunc::from_poly(p.clone()))
    }
}

impl LaurentMatrix {
    /// Determinant, computed after clearing negative exponents row by row.
    pub fn determinant(&self) -> Result<LaurentPoly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut total_shift = 0i64;
        let rows: Vec<Vec<UniPoly>> = (0..self.rows)
            .map(|i| {
                let shift = self.row(i).iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
                total_shift += shift;
                self.row(i).iter().map(|e| e.shift(-shift).to_poly()).collect()
            })
            .collect();
        Ok(LaurentPoly::from_poly(&bareiss_det(rows), total_shift))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.data.iter().filter_map(LaurentPoly::min_exp).min()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.data.iter().filter_map(LaurentPoly::max_exp).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_polynomial)
    }

    pub fn is_inverse_polynomial(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_inverse_polynomial)
    }

    pub fn shift(&self, k: i64) -> LaurentMatrix {
        self.map(|e| e.shift(k))
    }

    /// Inverse of a matrix whose determinant is a unit `c·x^k`, via the adjugate.
    pub fn inverse_unit(&self) -> Result<LaurentMatrix, MatrixError> {
        let det = self.determinant()?;
        let Some((c, k)) = det.as_monomial() else {
            return Err(MatrixError::NotUnimodular(det.to_string()));
        };
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::from_fn(1, 1, |_, _| LaurentPoly::monomial(c.recip(), -k)));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(j, i).determinant()?;
                let cof = if (i + j) % 2 == 1 { -&cof } else { cof };
                inv[(i, j)] = cof.div_monomial(&c, k);
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn determinant_examples() {
        let d = PolyMatrix::diagonal(vec![p(&[0, 1]), p(&[0, 0, 1])]);
        assert_eq!(d.determinant().unwrap(), p(&[0, 0, 0, 1]));
        assert_eq!(PolyMatrix::identity(3).determinant().unwrap(), UniPoly::one());
        let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        assert_eq!(m.determinant().unwrap(), p(&[-1, 0, 1]));
        let r = PolyMatrix::zeros(2, 3);
        assert!(matches!(r.determinant(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn laurent_determinant_and_inverse() {
        let t = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::x_pow(2), LaurentPoly::x_pow(-1)],
            vec![LaurentPoly::zero(), LaurentPoly::x_pow(-3)],
        ])
        .unwrap();
        assert_eq!(t.determinant().unwrap(), LaurentPoly::x_pow(-1));
        let inv = t.inverse_unit().unwrap();
        assert!((&t * &inv).is_identity());
    }

    #[test]
    fn inverse_unimodular_examples() {
        assert_eq!(PolyMatrix::identity(2).inverse_unimodular().unwrap(), PolyMatrix::identity(2));
        let shear = PolyMatrix::from_int_rows(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        let expected = PolyMatrix::from_int_rows(&[&[&[1], &[0, -1]], &[&[], &[1]]]);
        assert_eq!(shear.inverse_unimodular().unwrap(), expected);
        let d = PolyMatrix::from_int_rows(&[&[&[2], &[]], &[&[], &[3]]]);
        let inv = d.inverse_unimodular().unwrap();
        assert_eq!(inv[(0, 0)], UniPoly::constant(Rat::new(1, 2)));
        assert_eq!(inv[(1, 1)], UniPoly::constant(Rat::new(1, 3)));
        let bad = PolyMatrix::diagonal(vec![p(&[0, 1]), p(&[1])]);
        assert!(matches!(bad.inverse_unimodular(), Err(MatrixError::NotUnimodular(_))));
    }

    #[test]
    fn serializes_row_major() {
        let m = PolyMatrix::from_int_rows(&[&[&[1], &[0, 1]]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[[["1/1"],["0/1","1/1"]]]"#);
    }

    fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..3), n * n).prop_map(move |entries| {
            Matrix::from_fn(n, n, |i, j| UniPoly::from_ints(&entries[i * n + j]))
        })
    }

    fn unimodular(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec((0..n, 0..n, prop::collection::vec(-2i64..=2, 0..3)), 0..6).prop_map(
            move |ops| {
                let mut u = PolyMatrix::identity(n);
                for (a, b, c) in ops {
                    if a != b {
                        u.add_column_multiple(a, b, &UniPoly::from_ints(&c));
                    }
                }
                u
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn determinant_is_multiplicative(a in poly_matrix(3), b in poly_matrix(3)) {
            let lhs = (&a * &b).determinant().unwrap();
            let rhs = &a.determinant().unwrap() * &b.determinant().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn unimodular_inverse_is_exact(u in unimodular(3)) {
            let inv = u.inverse_unimodular().unwrap();
            prop_assert!((&u * &inv).is_identity());
            prop_assert!((&inv * &u).is_identity());
        }
    }
}
