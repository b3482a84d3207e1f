//! Ideals of rational points and the lattices of functions with a simple pole there.

use serde::{Deserialize, Serialize};

use super::{transition_matrix, FuncFieldError, Lattice};
use crate::arith::{Rat, UniPoly};
use crate::birkhoff::TransitionMatrix;
use crate::polymat::{FieldMatrixExt, Matrix, PolyMatrix, RatMatrix};

/// How the point over `x0` is singled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberValue {
    /// The point where the model coordinate `η` takes this value.
    Eta(Rat),
    /// The pole of the fiber coordinate `w = η/ℓ`, for `ℓ` linear with root `x0`.
    FiberPole,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointIdeal {
    pub ideal: Lattice,
    pub ring: Lattice,
    pub x0: Rat,
}

impl PointIdeal {
    /// The whole ring, viewed as an ideal containing `(x − x0)`.
    pub fn unit(ring: &Lattice, x0: Rat) -> PointIdeal {
        PointIdeal { ideal: ring.clone(), ring: ring.clone(), x0 }
    }
}

fn at(p: &PolyMatrix, x0: &Rat) -> RatMatrix {
    p.map(|c| c.eval(x0))
}

/// Kernel of evaluation at the rational point of `ring` over `x0` described by `fiber`.
pub fn point_ideal(ring: &Lattice, x0: &Rat, fiber: &FiberValue) -> Result<PointIdeal, FuncFieldError> {
    let m = ring.rank();
    let eq = ring.equation();
    let one = UniPoly::one();
    let mut residue: Vec<Vec<Rat>> = Vec::new();
    match fiber {
        FiberValue::Eta(eta0) => {
            let mut pi = eq.eta();
            pi[0] = &pi[0] - &UniPoly::constant(eta0.clone());
            let mult = at(&ring.multiplication(&pi, &one)?, x0);
            residue.extend((0..m).map(|j| mult.column(j)));
            residue.extend(at(&ring.trace_form(), x0).kernel());
        }
        FiberValue::FiberPole => {
            let l = eq.scale();
            if l.degree() != Some(1) || !l.eval(x0).is_zero() {
                return Err(FuncFieldError::PointNotOnCurve);
            }
            residue.extend(at(&ring.multiplication(&eq.eta(), &one)?, x0).kernel());
        }
    }
    let span: Vec<Vec<Rat>> = if residue.is_empty() {
        Vec::new()
    } else {
        let cols = Matrix::from_fn(m, residue.len(), |i, j| residue[j][i].clone());
        let (r, pivots) = cols.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    };
    let colength = m - span.len();
    match colength {
        0 => return Err(FuncFieldError::PointNotOnCurve),
        1 => {}
        n => return Err(FuncFieldError::PointNotSeparated(n)),
    }
    let lin = UniPoly::linear_root(x0);
    let mut gens = PolyMatrix::zeros(m, m + span.len());
    for j in 0..m {
        gens[(j, j)] = lin.clone();
    }
    for (c, v) in span.iter().enumerate() {
        for i in 0..m {
            gens[(i, m + c)] = UniPoly::constant(v[i].clone());
        }
    }
    let coords = gens.hermite_form()?.basis();
    let ideal = Lattice::from_generators(
        ring.equation_arc(),
        ring.base(),
        ring.twist(),
        &(ring.basis() * &coords),
        ring.denom(),
    )?;
    Ok(PointIdeal { ideal, ring: ring.clone(), x0: x0.clone() })
}

/// `{g : g·P ⊆ L}` for an ideal `P ⊇ (x − x0)·ring` and a lattice `L` stable under the ring.
pub fn colon_lattice(l: &Lattice, p: &PointIdeal) -> Result<Lattice, FuncFieldError> {
    let m = l.rank();
    let x0 = &p.x0;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for k in 0..m {
        let mult = at(&l.multiplication(&p.ideal.basis().column(k), p.ideal.denom())?, x0);
        rows.extend(mult.to_rows());
    }
    let extra = Matrix::from_rows(rows)?.kernel();
    let lin = UniPoly::linear_root(x0);
    let mut gens = PolyMatrix::zeros(m, m + extra.len());
    for i in 0..m {
        for j in 0..m {
            gens[(i, j)] = &l.basis()[(i, j)] * &lin;
        }
    }
    for (c, b) in extra.iter().enumerate() {
        let b: Vec<UniPoly> = b.iter().map(|r| UniPoly::constant(r.clone())).collect();
        let v = l.basis().mul_vec(&b);
        for i in 0..m {
            gens[(i, m + c)] = v[i].clone();
        }
    }
    Lattice::from_generators(l.equation_arc(), l.base(), l.twist(), &gens, &(l.denom() * &lin))
}

/// Transition matrix of the sheaf of functions with at most a simple pole at the point.
pub fn twisted_pushforward(
    m0: &Lattice,
    m1: &Lattice,
    point: &PointIdeal,
) -> Result<TransitionMatrix, FuncFieldError> {
    transition_matrix(&colon_lattice(m0, point)?, m1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BiPoly;
    use crate::funcfield::{integral_closure, make_integral};

    fn bi(coeffs: &[&[i64]]) -> BiPoly {
        BiPoly::from_fiber_coeffs(&coeffs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    fn conic() -> Lattice {
        // η² − (x − 1)
        integral_closure(&make_integral(&bi(&[&[1, -1], &[], &[1]])).unwrap()).unwrap()
    }

    #[test]
    fn ideal_of_ramification_point() {
        let m = conic();
        let p = point_ideal(&m, &Rat::one(), &FiberValue::Eta(Rat::zero())).unwrap();
        assert_eq!(p.ideal.basis(), &PolyMatrix::from_int_rows(&[&[&[-1, 1], &[]], &[&[], &[1]]]));
        assert!(p.ideal.denom().is_one());
        assert!(m.contains(&p.ideal));
    }

    #[test]
    fn point_off_curve_rejected() {
        let m = conic();
        assert_eq!(
            point_ideal(&m, &Rat::one(), &FiberValue::Eta(Rat::from(5))),
            Err(FuncFieldError::PointNotOnCurve)
        );
    }

    #[test]
    fn unseparated_point_rejected() {
        // η² − x²
        let m = integral_closure(&make_integral(&bi(&[&[0, 0, -1], &[], &[1]])).unwrap()).unwrap();
        // the branches η = ±x both pass through η = 0 over x = 0
        assert!(matches!(
            point_ideal(&m, &Rat::zero(), &FiberValue::Eta(Rat::zero())),
            Err(FuncFieldError::PointNotSeparated(2))
        ));
    }

    #[test]
    fn degree_one_point() {
        let m = integral_closure(&make_integral(&bi(&[&[], &[1]])).unwrap()).unwrap();
        let p = point_ideal(&m, &Rat::zero(), &FiberValue::Eta(Rat::zero())).unwrap();
        assert_eq!(p.ideal.basis(), &PolyMatrix::from_int_rows(&[&[&[0, 1]]]));
    }

    #[test]
    fn colon_adds_simple_pole() {
        let m = conic();
        let p = point_ideal(&m, &Rat::one(), &FiberValue::Eta(Rat::zero())).unwrap();
        let c = colon_lattice(&m, &p).unwrap();
        assert_eq!(c.basis(), &PolyMatrix::from_int_rows(&[&[&[-1, 1], &[]], &[&[], &[1]]]));
        assert_eq!(c.denom(), &UniPoly::from_ints(&[-1, 1]));
        assert!(c.contains(&m));
        assert_eq!(c.volume_degree(), m.volume_degree() - 1);
        let cc = colon_lattice(&c, &p).unwrap();
        assert!(cc.contains(&c));
        assert_eq!(cc.volume_degree(), m.volume_degree() - 2);
        assert_eq!(colon_lattice(&m, &PointIdeal::unit(&m, Rat::one())).unwrap(), m);
    }

    #[test]
    fn pole_of_fiber_coordinate() {
        // x·w² + w + 1: over x = 0 one point escapes to w = ∞
        let eq = make_integral(&bi(&[&[1], &[1], &[0, 1]])).unwrap();
        let m = integral_closure(&eq).unwrap();
        let p = point_ideal(&m, &Rat::zero(), &FiberValue::FiberPole).unwrap();
        // η = x·w is finite there with value −1
        let q = point_ideal(&m, &Rat::zero(), &FiberValue::Eta(Rat::from(-1))).unwrap();
        assert_eq!(p.ideal, q.ideal);
    }
}
