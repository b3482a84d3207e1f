use super::{Matrix, MatrixError, Ring};
use crate::arith::{Rat, RatFunc};

pub trait Field: Ring {
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn inv(&self) -> Rat {
        self.recip()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> RatFunc {
        self.recip()
    }
}

/// Gaussian elimination over a field.
pub trait FieldMatrixExt<T: Field> {
    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (Matrix<T>, Vec<usize>);
    fn rank(&self) -> usize;
    /// Basis of the right kernel, as column vectors.
    fn kernel(&self) -> Vec<Vec<T>>;
    fn inverse(&self) -> Result<Matrix<T>, MatrixError>;
}

impl<T: Field> FieldMatrixExt<T> for Matrix<T> {
    fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols() {
            if row == a.rows() {
                break;
            }
            let Some(r) = (row..a.rows()).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, r);
            let inv = a[(row, col)].inv();
            a.scale_row(row, &inv);
            for r2 in 0..a.rows() {
                if r2 != row && !a[(r2, col)].is_zero() {
                    let f = a[(r2, col)].neg();
                    a.add_row_multiple(r2, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let n = self.cols();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![T::zero(); n];
                v[free] = T::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r[(i, free)].neg();
                }
                v
            })
            .collect()
    }

    fn inverse(&self) -> Result<Matrix<T>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let n = self.rows();
        let aug = self.hconcat(&Matrix::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MatrixError::Singular);
        }
        Ok(r.columns_range(n..2 * n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::RatMatrix;

    fn q(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| Rat::from(c)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_and_kernel() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let s = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(s.rank(), 1);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(s.mul_vec(&v).iter().all(Rat::is_zero));
        }
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular));
    }
}
