//! Exact arithmetic over Q: rationals, univariate, Laurent and bivariate polynomials,
//! rational functions, and quotient rings `Q[x]/(g)` with dynamic splitting.

mod bipoly;
mod laurent;
mod modgcd;
mod modrank;
mod quotient;
mod rat;
mod ratfunc;
mod unipoly;
mod zpoly;

pub use bipoly::{resultant_fiber, BiPoly};
pub use laurent::LaurentPoly;
pub use modrank::rank_q;
pub use quotient::{split_evaluate, QuotientCtx, QuotientError, SplitEvent};
pub use rat::{ParseRatError, Rat};
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("quotient modulus must be nonconstant")]
    ConstantModulus,
    #[error("quotient modulus {0} is not squarefree")]
    NotSquarefree(String),
}

/// Fraction-free (Bareiss) determinant of a square matrix over `Q[x]`, computed over `Z[x]`
/// after clearing row denominators.
pub fn bareiss_det(a: Vec<Vec<UniPoly>>) -> UniPoly {
    zpoly::det(&a)
}
