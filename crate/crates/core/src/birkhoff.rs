//! Birkhoff–Grothendieck factorization of transition matrices of vector bundles on P¹.
//!
//! A bundle of rank `m` is glued from the trivial modules over `Q[x]` (chart at zero) and
//! `Q[1/x]` (chart at infinity). The transition matrix `T` expresses the basis at infinity
//! in terms of the basis at zero, so `O(d)` has transition `x^d`: the line bundle with
//! `T = (x)` has splitting type `(1)` and two global sections.
//!
//! Factorization writes `T = P · diag(x^d_1, …, x^d_m) · Q` with `P` unimodular over `Q[x]`
//! and `Q` unimodular over `Q[1/x]`. It is computed by column-reducing the columns of `T`
//! as a `Q[1/x]`-basis: while the leading coefficient vectors (the coefficients of the
//! lowest power of `x` in each column) are linearly dependent, a relation among them is
//! used to lower the `1/x`-degree of one column. The sum of the column degrees drops by at
//! least one per step and is bounded below by `-k` for `det T = c·x^k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{rank_q, LaurentPoly, Rat};
use crate::polymat::{FieldMatrixExt, LaurentMatrix, Matrix, MatrixError, PolyMatrix, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BirkhoffError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("determinant {0} is not a unit of the Laurent ring")]
    NotUnit(String),
    #[error("column reduction exceeded {cap} steps; column degrees trace {trace:?}")]
    IterationCap { cap: usize, trace: Vec<Vec<i64>> },
    #[error("twist {k} outside the admissible window |k| <= {window}")]
    WindowExceeded { k: i64, window: i64 },
}

/// Square Laurent matrix with unit determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    matrix: LaurentMatrix,
    #[serde(skip)]
    det: (Rat, i64),
}

impl TransitionMatrix {
    pub fn new(matrix: LaurentMatrix) -> Result<TransitionMatrix, BirkhoffError> {
        let det = matrix.determinant()?;
        let Some(det) = det.as_monomial() else {
            return Err(BirkhoffError::NotUnit(det.to_string()));
        };
        Ok(TransitionMatrix { matrix, det })
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `(c, k)` with `det T = c·x^k`.
    pub fn determinant(&self) -> (&Rat, i64) {
        (&self.det.0, self.det.1)
    }

    /// Default admissible twist window for [`h0_oracle`].
    pub fn default_window(&self) -> i64 {
        let lo = self.matrix.min_exp().unwrap_or(0).abs();
        let hi = self.matrix.max_exp().unwrap_or(0).abs();
        self.rank() as i64 * lo.max(hi) + 2
    }
}

impl<'de> Deserialize<'de> for TransitionMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let m = LaurentMatrix::deserialize(deserializer)?;
        TransitionMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Multiset of integers `d_1 >= … >= d_m`; `⊕ O(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplittingType(Vec<i64>);

impl From<Vec<i64>> for SplittingType {
    fn from(v: Vec<i64>) -> Self {
        SplittingType::new(v)
    }
}

impl From<SplittingType> for Vec<i64> {
    fn from(t: SplittingType) -> Vec<i64> {
        t.0
    }
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> SplittingType {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(degrees)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of summands of nonnegative degree.
    pub fn nonnegative_count(&self) -> usize {
        self.0.iter().filter(|&&d| d >= 0).count()
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `T = left · diag(x^exponents) · right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BirkhoffFactorization {
    /// Polynomial in `x`, constant nonzero determinant.
    pub left: PolyMatrix,
    /// Sorted descending.
    pub exponents: Vec<i64>,
    /// Polynomial in `1/x` (coefficient `i` multiplies `x^-i`), constant nonzero determinant.
    pub right: PolyMatrix,
}

impl BirkhoffFactorization {
    pub fn splitting_type(&self) -> SplittingType {
        SplittingType::new(self.exponents.clone())
    }

    pub fn middle(&self) -> LaurentMatrix {
        Matrix::diagonal(self.exponents.iter().map(|&d| LaurentPoly::x_pow(d)).collect())
    }

    /// Multiplies the three factors back together.
    pub fn reconstruct(&self) -> LaurentMatrix {
        &(&self.left.to_laurent() * &self.middle()) * &self.right.to_laurent_inverse()
    }
}

pub fn default_iteration_cap(m: usize) -> usize {
    64 * m * m
}

pub fn factorize(t: &TransitionMatrix) -> Result<BirkhoffFactorization, BirkhoffError> {
    factorize_with_cap(t, default_iteration_cap(t.rank()))
}

pub fn factorize_with_cap(
    t: &TransitionMatrix,
    cap: usize,
) -> Result<BirkhoffFactorization, BirkhoffError> {
    let m = t.rank();
    let mut cols = t.matrix.clone();
    // Accumulates Q with T = (T·Q⁻¹)·Q; entries are polynomials in 1/x.
    let mut right: LaurentMatrix = Matrix::identity(m);
    let mut trace = Vec::new();

    let column_low = |cols: &LaurentMatrix, j: usize| -> i64 {
        (0..m).filter_map(|i| cols[(i, j)].min_exp()).min().expect("invertible matrix has no zero column")
    };

    loop {
        let lows: Vec<i64> = (0..m).map(|j| column_low(&cols, j)).collect();
        let leading: RatMatrix = Matrix::from_fn(m, m, |i, j| cols[(i, j)].coeff(lows[j]));
        let kernel = leading.kernel();
        let Some(relation) = kernel.into_iter().next() else {
            break;
        };
        if trace.len() >= cap {
            return Err(BirkhoffError::IterationCap { cap, trace });
        }
        trace.push(lows.clone());
        // Column with the largest 1/x-degree (smallest low exponent) among the relation's support.
        let pivot = (0..m)
            .filter(|&j| !relation[j].is_zero())
            .min_by_key(|&j| (lows[j], j))
            .expect("nonzero kernel vector");
        let pivot_coeff = relation[pivot].recip();
        for j in 0..m {
            if j == pivot || relation[j].is_zero() {
                continue;
            }
            // (x^-1)^(n_pivot - n_j) with n = -low
            let factor = LaurentPoly::monomial(&relation[j] * &pivot_coeff, lows[pivot] - lows[j]);
            cols.add_column_multiple(pivot, j, &factor);
            let neg = -&factor;
            right.add_row_multiple(j, pivot, &neg);
        }
    }

    let lows: Vec<i64> = (0..m).map(|j| column_low(&cols, j)).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(lows[j]), j));

    let left = Matrix::from_fn(m, m, |i, k| cols[(i, order[k])].shift(-lows[order[k]]).to_poly());
    let right_sorted = Matrix::from_fn(m, m, |k, j| right[(order[k], j)].to_inverse_poly());
    let exponents = order.iter().map(|&j| lows[j]).collect();
    Ok(BirkhoffFactorization { left, exponents, right: right_sorted })
}

pub fn splitting_type(t: &TransitionMatrix) -> Result<SplittingType, BirkhoffError> {
    Ok(factorize(t)?.splitting_type())
}

/// `(h⁰, h¹)` of `⊕ O(d_i + k)` on P¹.
pub fn cohomology_dims(t: &SplittingType, k: i64) -> (u64, u64) {
    t.degrees().iter().fold((0, 0), |(h0, h1), &d| {
        let a = d + k;
        (h0 + (a + 1).max(0) as u64, h1 + (-a - 1).max(0) as u64)
    })
}

/// Dimension of the global sections of the glued bundle twisted by `O(k)`, computed
/// directly from `T` without factorizing it.
///
/// A section is a vector `v` over `Q[x]` with `x^-k · T⁻¹ · v` over `Q[1/x]`. Writing
/// `v = T·x^k·w` shows `deg v <= k + max_exp(T)`, so the search space is finite.
pub fn h0_oracle(t: &TransitionMatrix, k: i64) -> Result<u64, BirkhoffError> {
    h0_oracle_with_window(t, k, t.default_window())
}

pub fn h0_oracle_with_window(t: &TransitionMatrix, k: i64, window: i64) -> Result<u64, BirkhoffError> {
    if k.abs() > window {
        return Err(BirkhoffError::WindowExceeded { k, window });
    }
    let m = t.rank();
    let bound = k + t.matrix.max_exp().unwrap_or(0);
    if bound < 0 {
        return Ok(0);
    }
    let bound = bound as usize;
    let inv = t.matrix.inverse_unit()?;
    let unknowns = m * (bound + 1);
    let top = inv.max_exp().unwrap_or(0) + bound as i64 - k;
    // One equation per (row i, positive exponent e): coefficient of x^e must vanish.
    let mut eqs: BTreeMap<(usize, i64), Vec<Rat>> = BTreeMap::new();
    for i in 0..m {
        for e in 1..=top {
            eqs.insert((i, e), vec![Rat::zero(); unknowns]);
        }
    }
    for i in 0..m {
        for j in 0..m {
            for (exp, c) in inv[(i, j)].terms() {
                for l in 0..=bound {
                    let e = exp + l as i64 - k;
                    if e >= 1 {
                        let row = eqs.get_mut(&(i, e)).expect("exponent within range");
                        row[j * (bound + 1) + l] += c;
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Rat>> = eqs.into_values().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let rank = rank_q(&rows);
    Ok((unknowns - rank) as u64)
}

/// Random matrix over `Q[x]` with determinant `±1`, built as a product of `steps`
/// elementary column operations with coefficients of degree at most `max_deg` and small
/// integer entries, followed by a random column permutation.
pub fn random_unimodular<R: rand::Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    steps: usize,
    max_deg: usize,
) -> PolyMatrix {
    use crate::arith::UniPoly;
    use rand::seq::SliceRandom;
    let mut u = PolyMatrix::identity(m);
    if m < 2 {
        return u;
    }
    for _ in 0..steps {
        let target = rng.gen_range(0..m);
        let mut source = rng.gen_range(0..m - 1);
        if source >= target {
            source += 1;
        }
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2..=2)).collect();
        u.add_column_multiple(target, source, &UniPoly::from_ints(&coeffs));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    Matrix::from_fn(m, m, |i, j| u[(i, perm[j])].clone())
}
