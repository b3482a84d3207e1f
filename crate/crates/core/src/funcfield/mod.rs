//! Function fields of covers of the line, chartwise normalizations as lattices over a
//! polynomial ring, point ideals, colon lattices and the transition matrix of the direct
//! image.
//!
//! Every lattice lives in the power basis `1, η, …, η^{m−1}` of its chart's monic model.
//! Lattices over `Q[1/x]` record the chart exponent `s` with `η' = x^{−s}·η`, which is how
//! the two charts are compared.

mod closure;
mod ideal;

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{ArithError, BiPoly, LaurentPoly, Rat, RatFunc, UniPoly};
use crate::birkhoff::{BirkhoffError, TransitionMatrix};
use crate::polymat::{FieldMatrixExt, FracMatrix, LaurentMatrix, Matrix, MatrixError, PolyMatrix};

pub use closure::{closure_at_infinity, equation_order, integral_closure, maximize};
pub use ideal::{colon_lattice, point_ideal, twisted_pushforward, FiberValue, PointIdeal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuncFieldError {
    #[error("fiber degree must be at least 1")]
    FiberDegree,
    #[error("leading fiber coefficient vanishes identically")]
    ZeroLeadingCoefficient,
    #[error("equation has a repeated factor (zero discriminant)")]
    Degenerate,
    #[error("coefficient of w^{index} has degree above the chart bound {bound}")]
    DegreeBound { index: usize, bound: i64 },
    #[error("lattice pair does not glue: entry {0} is not a Laurent polynomial")]
    NonLaurent(String),
    #[error("lattices live over incompatible base rings")]
    BaseMismatch,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("fiber data does not single out one rational point (residue dimension {0})")]
    PointNotSeparated(usize),
    #[error("element does not preserve the lattice")]
    NotStable,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Birkhoff(#[from] BirkhoffError),
}

/// Monic model `η^m + b_{m−1}η^{m−1} + … + b_0` of `F(x, w) = Σ c_i(x) w^i` with `η = ℓ(x)·w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverEquation {
    original: BiPoly,
    /// `b_0, …, b_{m−1}`.
    coefficients: Vec<UniPoly>,
    scale: UniPoly,
    #[serde(skip)]
    powers: Vec<PolyMatrix>,
}

impl CoverEquation {
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[UniPoly] {
        &self.coefficients
    }

    /// `ℓ` with `η = ℓ·w`.
    pub fn scale(&self) -> &UniPoly {
        &self.scale
    }

    pub fn original(&self) -> &BiPoly {
        &self.original
    }

    /// The monic model as a bivariate polynomial in `(x, η)`.
    pub fn monic(&self) -> BiPoly {
        let mut c = self.coefficients.clone();
        c.push(UniPoly::one());
        BiPoly::from_fiber_coeffs(&c)
    }

    /// Multiplication by `η^i` on the power basis, `i < 2m − 1`.
    fn companion_power(&self, i: usize) -> &PolyMatrix {
        &self.powers[i]
    }

    /// Multiplication matrix on the power basis of the element with power coordinates `v`.
    pub fn multiplication(&self, v: &[UniPoly]) -> PolyMatrix {
        let m = self.degree();
        let mut out = PolyMatrix::zeros(m, m);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.companion_power(i);
            for r in 0..m {
                for k in 0..m {
                    if !p[(r, k)].is_zero() {
                        out[(r, k)] = &out[(r, k)] + &(c * &p[(r, k)]);
                    }
                }
            }
        }
        out
    }

    /// `Tr(η^{i+j})`.
    pub fn trace_matrix(&self) -> PolyMatrix {
        let m = self.degree();
        let traces: Vec<UniPoly> = (0..2 * m - 1)
            .map(|k| {
                let p = self.companion_power(k);
                (0..m).fold(UniPoly::zero(), |acc, i| &acc + &p[(i, i)])
            })
            .collect();
        Matrix::from_fn(m, m, |i, j| traces[i + j].clone())
    }

    pub fn discriminant(&self) -> UniPoly {
        self.trace_matrix().determinant().expect("square")
    }

    /// Power coordinates of `η`.
    pub fn eta(&self) -> Vec<UniPoly> {
        let m = self.degree();
        if m == 1 {
            return vec![-&self.coefficients[0]];
        }
        let mut v = vec![UniPoly::zero(); m];
        v[1] = UniPoly::one();
        v
    }
}

/// Substitutes `η = ℓ·w` into `Σ c_i w^i` and clears `ℓ^{m−1}`.
pub fn make_integral(f: &BiPoly) -> Result<CoverEquation, FuncFieldError> {
    let m = match f.deg_fiber() {
        Some(m) if m >= 1 => m,
        _ => return Err(FuncFieldError::FiberDegree),
    };
    let c = f.fiber_coeffs();
    let scale = c[m].clone();
    if scale.is_zero() {
        return Err(FuncFieldError::ZeroLeadingCoefficient);
    }
    let coefficients: Vec<UniPoly> =
        (0..m).map(|i| &c[i] * &scale.pow((m - 1 - i) as u32)).collect();
    Ok(build_equation(f.clone(), coefficients, scale))
}

fn build_equation(original: BiPoly, coefficients: Vec<UniPoly>, scale: UniPoly) -> CoverEquation {
    let m = coefficients.len();
    let companion = Matrix::from_fn(m, m, |i, k| {
        if k + 1 < m {
            if i == k + 1 {
                UniPoly::one()
            } else {
                UniPoly::zero()
            }
        } else {
            -&coefficients[i]
        }
    });
    let mut powers = vec![PolyMatrix::identity(m)];
    for k in 1..2 * m - 1 {
        let next = &companion * &powers[k - 1];
        powers.push(next);
    }
    CoverEquation { original, coefficients, scale, powers }
}

/// Element of the function field, in the power basis of an equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldElement {
    pub coords: Vec<RatFunc>,
}

impl FieldElement {
    pub fn from_poly_coords(v: &[UniPoly], denom: &UniPoly) -> FieldElement {
        FieldElement { coords: v.iter().map(|c| RatFunc::new(c.clone(), denom.clone())).collect() }
    }

    pub fn one(m: usize) -> FieldElement {
        let mut coords = vec![RatFunc::zero(); m];
        coords[0] = RatFunc::one();
        FieldElement { coords }
    }

    pub fn mul(&self, other: &FieldElement, eq: &CoverEquation) -> FieldElement {
        let (v, d) = common_denominator(&self.coords);
        let mult = eq.multiplication(&v).map(|p| RatFunc::new(p.clone(), d.clone()));
        FieldElement { coords: mult.mul_vec(&other.coords) }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        FieldElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &RatFunc) -> FieldElement {
        FieldElement { coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

fn common_denominator(v: &[RatFunc]) -> (Vec<UniPoly>, UniPoly) {
    let d = v.iter().fold(UniPoly::one(), |acc, c| acc.lcm(c.den()));
    let nums = v.iter().map(|c| c.num() * &d.exact_div(c.den()).expect("lcm")).collect();
    (nums, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseRing {
    /// `Q[x]`, chart at zero.
    X,
    /// `Q[x']` with `x' = 1/x`, chart at infinity.
    InvX,
}

/// Free module `basis/denom` over the chart's base ring, columns in the chart's power basis.
///
/// The basis is kept in column Hermite form (lower triangular, monic diagonal) and `denom`
/// is monic and coprime to the content of the basis.
#[derive(Debug, Clone, Serialize)]
pub struct Lattice {
    base: BaseRing,
    basis: PolyMatrix,
    denom: UniPoly,
    /// `s` with `η' = x^{−s}·η`; zero over `Q[x]`.
    twist: i64,
    #[serde(skip)]
    equation: Arc<CoverEquation>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Lattice) -> bool {
        self.base == other.base
            && self.twist == other.twist
            && self.basis == other.basis
            && self.denom == other.denom
    }
}

impl Lattice {
    /// Module generated by the columns of `gens/denom`, which must have full row rank.
    pub fn from_generators(
        equation: Arc<CoverEquation>,
        base: BaseRing,
        twist: i64,
        gens: &PolyMatrix,
        denom: &UniPoly,
    ) -> Result<Lattice, FuncFieldError> {
        let mut basis = gens.hermite_form()?.basis();
        let mut denom = denom.clone();
        let content = basis.entries().fold(denom.clone(), |acc, c| acc.gcd(c));
        if !content.is_one() {
            basis = basis.map(|c| c.exact_div(&content).expect("content divides"));
            denom = denom.exact_div(&content).expect("content divides");
        }
        let lc = denom.lc();
        if !lc.is_one() {
            let inv = UniPoly::constant(lc.recip());
            basis = basis.map(|c| c * &inv);
            denom = denom.monic();
        }
        Ok(Lattice { base, basis, denom, twist, equation })
    }

    pub fn power_basis(equation: Arc<CoverEquation>, base: BaseRing, twist: i64) -> Lattice {
        let m = equation.degree();
        Lattice { base, basis: PolyMatrix::identity(m), denom: UniPoly::one(), twist, equation }
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn equation(&self) -> &CoverEquation {
        &self.equation
    }

    pub fn equation_arc(&self) -> Arc<CoverEquation> {
        self.equation.clone()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn element(&self, k: usize) -> FieldElement {
        FieldElement::from_poly_coords(&self.basis.column(k), &self.denom)
    }

    pub fn is_power_basis(&self) -> bool {
        self.basis.is_identity() && self.denom.is_one()
    }

    /// `deg det(basis) − m·deg denom`; negative of the index degree over the power basis order.
    pub fn volume_degree(&self) -> i64 {
        let det: usize = (0..self.rank()).map(|i| self.basis[(i, i)].degree().unwrap_or(0)).sum();
        det as i64 - (self.rank() * self.denom.degree().unwrap_or(0)) as i64
    }

    /// Coordinates of `v/c` (power coordinates) in this basis, if they are polynomial.
    pub fn coordinates(&self, v: &[UniPoly], c: &UniPoly) -> Option<Vec<UniPoly>> {
        let scaled: Vec<UniPoly> = v.iter().map(|p| p * &self.denom).collect();
        let y = tri_solve_poly(&self.basis, &scaled)?;
        y.iter().map(|p| p.exact_div(c)).collect()
    }

    pub fn contains_element(&self, g: &FieldElement) -> bool {
        let (v, c) = common_denominator(&g.coords);
        self.coordinates(&v, &c).is_some()
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|k| self.coordinates(&other.basis.column(k), &other.denom).is_some())
    }

    /// Multiplication by the element `v/c` (power coordinates) in this basis.
    pub fn multiplication(&self, v: &[UniPoly], c: &UniPoly) -> Result<PolyMatrix, FuncFieldError> {
        let mult = self.equation.multiplication(v);
        let m = self.rank();
        let mut out = PolyMatrix::zeros(m, m);
        for k in 0..m {
            let image = mult.mul_vec(&self.basis.column(k));
            let y = tri_solve_poly(&self.basis, &image).ok_or(FuncFieldError::NotStable)?;
            for (i, p) in y.into_iter().enumerate() {
                out[(i, k)] = p.exact_div(c).ok_or(FuncFieldError::NotStable)?;
            }
        }
        Ok(out)
    }

    /// Multiplication by the `j`-th basis element, in this basis.
    pub fn basis_multiplication(&self, j: usize) -> Result<PolyMatrix, FuncFieldError> {
        self.multiplication(&self.basis.column(j), &self.denom)
    }

    pub fn is_multiplicatively_closed(&self) -> bool {
        (0..self.rank()).all(|j| self.basis_multiplication(j).is_ok())
    }

    /// Trace form `Tr(ω_i ω_j)` of this basis.
    pub fn trace_form(&self) -> PolyMatrix {
        let g = self.equation.trace_matrix();
        let prod = &(&self.basis.transpose() * &g) * &self.basis;
        let d2 = &self.denom * &self.denom;
        prod.map(|p| p.exact_div(&d2).expect("trace form of an integral lattice is integral"))
    }

    /// Basis over `Q(x)` in the ambient power basis `1, η, …` of the chart at zero.
    pub fn ambient_basis(&self) -> FracMatrix {
        match self.base {
            BaseRing::X => self.basis.map(|p| RatFunc::new(p.clone(), self.denom.clone())),
            BaseRing::InvX => {
                let m = self.rank();
                let d = RatFunc::from_poly(self.denom.clone()).invert_variable();
                Matrix::from_fn(m, m, |j, k| {
                    let entry = &RatFunc::from_poly(self.basis[(j, k)].clone()).invert_variable() / &d;
                    let shift = RatFunc::new(UniPoly::one(), UniPoly::monomial(Rat::one(), j * self.twist as usize));
                    &entry * &shift
                })
            }
        }
    }
}

/// Forward substitution for a lower triangular polynomial matrix, exact or `None`.
pub(crate) fn tri_solve_poly(n: &PolyMatrix, z: &[UniPoly]) -> Option<Vec<UniPoly>> {
    let m = n.rows();
    let mut y: Vec<UniPoly> = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = z[i].clone();
        for (j, yj) in y.iter().enumerate() {
            if !n[(i, j)].is_zero() && !yj.is_zero() {
                acc = &acc - &(&n[(i, j)] * yj);
            }
        }
        y.push(acc.exact_div(&n[(i, i)])?);
    }
    Some(y)
}

fn tri_solve_frac(n: &PolyMatrix, z: &[RatFunc]) -> Vec<RatFunc> {
    let m = n.rows();
    let mut y: Vec<RatFunc> = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = z[i].clone();
        for (j, yj) in y.iter().enumerate() {
            if !n[(i, j)].is_zero() {
                acc = &acc - &(&RatFunc::from_poly(n[(i, j)].clone()) * yj);
            }
        }
        y.push(&acc / &RatFunc::from_poly(n[(i, i)].clone()));
    }
    y
}

fn as_laurent(f: &RatFunc) -> Option<LaurentPoly> {
    let den = f.den();
    let k = den.degree()?;
    if den.coeffs()[..k].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(LaurentPoly::from_poly(f.num(), -(k as i64)))
}

/// `T = B₀⁻¹·B₁` for lattices over the two charts, in the ambient power basis.
pub fn transition_matrix(m0: &Lattice, m1: &Lattice) -> Result<TransitionMatrix, FuncFieldError> {
    if m0.base != BaseRing::X || m1.base != BaseRing::InvX || m0.rank() != m1.rank() {
        return Err(FuncFieldError::BaseMismatch);
    }
    let m = m0.rank();
    let b1 = m1.ambient_basis();
    let d0 = RatFunc::from_poly(m0.denom.clone());
    let triangular = (0..m).all(|i| (i + 1..m).all(|j| m0.basis[(i, j)].is_zero()));
    let general_inverse = if triangular { None } else { Some(m0.basis.to_frac().inverse()?) };
    let mut t: LaurentMatrix = Matrix::zeros(m, m);
    for k in 0..m {
        let z: Vec<RatFunc> = b1.column(k).iter().map(|c| c * &d0).collect();
        let solved = match &general_inverse {
            None => tri_solve_frac(&m0.basis, &z),
            Some(inv) => inv.mul_vec(&z),
        };
        for (i, entry) in solved.into_iter().enumerate() {
            t[(i, k)] = as_laurent(&entry).ok_or_else(|| FuncFieldError::NonLaurent(entry.to_string()))?;
        }
    }
    Ok(TransitionMatrix::new(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birkhoff::{splitting_type, SplittingType};

    fn bi(coeffs: &[&[i64]]) -> BiPoly {
        BiPoly::from_fiber_coeffs(&coeffs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    #[test]
    fn monic_substitution() {
        // w^2 - x
        let eq = make_integral(&bi(&[&[0, -1], &[], &[1]])).unwrap();
        assert_eq!(eq.coefficients(), &[UniPoly::from_ints(&[0, -1]), UniPoly::zero()]);
        assert!(eq.scale().is_one());
        // x w^2 + w + 1 -> η^2 + η + x
        let eq = make_integral(&bi(&[&[1], &[1], &[0, 1]])).unwrap();
        assert_eq!(eq.coefficients(), &[UniPoly::from_ints(&[0, 1]), UniPoly::one()]);
        assert_eq!(eq.scale(), &UniPoly::x());
        // 2 w^2 + 3 -> η^2 + 6, η = 2w
        let eq = make_integral(&bi(&[&[3], &[], &[2]])).unwrap();
        assert_eq!(eq.coefficients(), &[UniPoly::from_ints(&[6]), UniPoly::zero()]);
        assert!(matches!(make_integral(&bi(&[&[1]])), Err(FuncFieldError::FiberDegree)));
    }

    #[test]
    fn trace_and_discriminant() {
        // η^2 - x: traces 2, 0, 2x; disc 4x
        let eq = make_integral(&bi(&[&[0, -1], &[], &[1]])).unwrap();
        assert_eq!(eq.discriminant(), UniPoly::from_ints(&[0, 4]));
    }

    #[test]
    fn field_element_product() {
        let eq = make_integral(&bi(&[&[0, -1], &[], &[1]])).unwrap();
        let eta = FieldElement::from_poly_coords(&eq.eta(), &UniPoly::one());
        let sq = eta.mul(&eta, &eq);
        assert_eq!(sq.coords, vec![RatFunc::from_poly(UniPoly::x()), RatFunc::zero()]);
    }

    #[test]
    fn identical_lattices_glue_trivially() {
        let eq = Arc::new(make_integral(&bi(&[&[0, -1], &[], &[1]])).unwrap());
        let m0 = Lattice::power_basis(eq.clone(), BaseRing::X, 0);
        let m1 = Lattice::power_basis(eq, BaseRing::InvX, 0);
        let t = transition_matrix(&m0, &m1).unwrap();
        assert!(t.matrix().is_identity());
        assert_eq!(splitting_type(&t).unwrap(), SplittingType::new(vec![0, 0]));
        // swapping basis order gives a permutation matrix
        let swapped = PolyMatrix::from_int_rows(&[&[&[], &[1]], &[&[1], &[]]]);
        let m2 = Lattice { basis: swapped, ..m0.clone() };
        let t = transition_matrix(&m2, &m0_inv(&m0)).unwrap();
        assert_eq!(splitting_type(&t).unwrap(), SplittingType::new(vec![0, 0]));
    }

    fn m0_inv(m0: &Lattice) -> Lattice {
        Lattice { base: BaseRing::InvX, ..m0.clone() }
    }
}
