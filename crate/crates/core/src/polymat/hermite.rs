use serde::Serialize;

use super::{MatrixError, PolyMatrix};
use crate::arith::UniPoly;

/// Column Hermite form `input · transform = reduced`.
///
/// `reduced` is lower triangular in its first `rows` columns (the remaining columns are
/// zero), with monic diagonal entries and every entry left of the diagonal of smaller
/// degree than the diagonal entry of its row. `transform` has constant nonzero determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HermiteResult {
    pub reduced: PolyMatrix,
    pub transform: PolyMatrix,
}

impl HermiteResult {
    /// The leading square block, i.e. a basis of the column module.
    pub fn basis(&self) -> PolyMatrix {
        self.reduced.columns_range(0..self.reduced.rows())
    }
}

impl PolyMatrix {
    /// Column Hermite form with transformation tracking. Requires full row rank.
    ///
    /// Pivots are chosen as the lowest-degree nonzero entry in the current row, ties broken
    /// by the first column.
    pub fn hermite_form(&self) -> Result<HermiteResult, MatrixError> {
        let (m, n) = (self.rows(), self.cols());
        if m > n {
            return Err(MatrixError::RankDeficient);
        }
        let mut h = self.clone();
        let mut u = PolyMatrix::identity(n);
        for i in 0..m {
            loop {
                let pivot = (i..n)
                    .filter(|&j| !h[(i, j)].is_zero())
                    .min_by_key(|&j| (h[(i, j)].degree().unwrap(), j));
                let Some(p) = pivot else {
                    return Err(MatrixError::RankDeficient);
                };
                let mut done = true;
                for j in i..n {
                    if j == p || h[(i, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = h[(i, j)].div_rem(&h[(i, p)]);
                    let neg_q = -q;
                    h.add_column_multiple(j, p, &neg_q);
                    u.add_column_multiple(j, p, &neg_q);
                    if !r.is_zero() {
                        done = false;
                    }
                }
                if done {
                    h.swap_columns(i, p);
                    u.swap_columns(i, p);
                    break;
                }
            }
            let lc_inv = UniPoly::constant(h[(i, i)].lc().recip());
            h.scale_column(i, &lc_inv);
            u.scale_column(i, &lc_inv);
            for j in 0..i {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_rem(&h[(i, i)]).0;
                let neg_q = -q;
                h.add_column_multiple(j, i, &neg_q);
                u.add_column_multiple(j, i, &neg_q);
            }
        }
        Ok(HermiteResult { reduced: h, transform: u })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::Matrix;
    use proptest::prelude::*;

    #[test]
    fn identity_is_fixed() {
        let r = PolyMatrix::identity(3).hermite_form().unwrap();
        assert!(r.reduced.is_identity());
        assert!(r.transform.is_identity());
    }

    #[test]
    fn two_column_reduction() {
        // [[x, 0], [1, 1]]
        let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[1], &[1]]]);
        let r = m.hermite_form().unwrap();
        assert_eq!(&m * &r.transform, r.reduced);
        assert_eq!(r.reduced, PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[], &[1]]]));
        assert_eq!(r.transform.determinant().unwrap().degree(), Some(0));
    }

    #[test]
    fn diagonal_made_monic() {
        let m = PolyMatrix::from_int_rows(&[&[&[0, 0, 3], &[]], &[&[], &[0, -2]]]);
        let r = m.hermite_form().unwrap();
        assert_eq!(r.reduced, PolyMatrix::from_int_rows(&[&[&[0, 0, 1], &[]], &[&[], &[0, 1]]]));
    }

    #[test]
    fn rank_deficient_rejected() {
        let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[0, 2]], &[&[1], &[2]]]);
        assert_eq!(m.hermite_form(), Err(MatrixError::RankDeficient));
    }

    #[test]
    fn wide_input_gives_basis() {
        // columns x, x^2, x+1 in a 1x3 matrix generate the unit ideal
        let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[0, 0, 1], &[1, 1]]]);
        let r = m.hermite_form().unwrap();
        assert_eq!(r.basis(), PolyMatrix::from_int_rows(&[&[&[1]]]));
        assert!(r.reduced[(0, 1)].is_zero() && r.reduced[(0, 2)].is_zero());
    }

    fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..4), n * n).prop_map(move |entries| {
            Matrix::from_fn(n, n, |i, j| UniPoly::from_ints(&entries[i * n + j]))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hermite_identity_holds(m in poly_matrix(3)) {
            let det = m.determinant().unwrap();
            prop_assume!(!det.is_zero());
            let r = m.hermite_form().unwrap();
            prop_assert_eq!(&m * &r.transform, r.reduced.clone());
            let du = r.transform.determinant().unwrap();
            prop_assert_eq!(du.degree(), Some(0));
            prop_assert_eq!(r.reduced.determinant().unwrap(), &det * &du);
            for i in 0..3 {
                prop_assert!(r.reduced[(i, i)].lc().is_one());
                for j in 0..3 {
                    if j > i {
                        prop_assert!(r.reduced[(i, j)].is_zero());
                    } else if j < i {
                        let dj = r.reduced[(i, j)].degree();
                        prop_assert!(dj.is_none() || dj < r.reduced[(i, i)].degree());
                    }
                }
            }
        }
    }
}
