//! Round-2 maximalization over a univariate polynomial ring.
//!
//! For each squarefree `p` collecting the primes that divide the discriminant of the
//! current order at least twice, the radical of `pO` is the kernel of the trace form modulo
//! `p` (characteristic zero), and the multiplier ring of the radical is found as the kernel
//! of a linear system over `Q[x]/p`. Arithmetic modulo `p` never factors `p`; it splits it
//! on demand.

use std::sync::Arc;

use super::{make_integral, tri_solve_poly, BaseRing, CoverEquation, FuncFieldError, Lattice};
use crate::arith::{split_evaluate, BiPoly, QuotientCtx, SplitEvent, UniPoly};
use crate::polymat::PolyMatrix;

/// Normalization of `Q[x][η]` for the monic model, as a lattice over `Q[x]`.
pub fn integral_closure(eq: &CoverEquation) -> Result<Lattice, FuncFieldError> {
    maximize(equation_order(Arc::new(eq.clone()), BaseRing::X, 0)?)
}

/// The order spanned by `1` and `ω_k = c_m w^k + c_{m−1} w^{k−1} + … + c_{m−k+1} w`,
/// `k = 1..m−1`. It contains the power basis in `η` and its discriminant is that of `F`, so
/// zeros of the leading coefficient cost nothing in [`maximize`].
pub fn equation_order(eq: Arc<CoverEquation>, base: BaseRing, twist: i64) -> Result<Lattice, FuncFieldError> {
    let m = eq.degree();
    if m < 2 || eq.scale().is_constant() {
        return Ok(Lattice::power_basis(eq, base, twist));
    }
    let c = eq.original().fiber_coeffs();
    let l = eq.scale().clone();
    let lpow: Vec<UniPoly> = (0..m - 1).map(|k| l.pow(k as u32)).collect();
    // common denominator ℓ^{m−2}; the term c_{m−j}·w^{k−j} is c_{m−j}·η^{k−j}/ℓ^{k−j}
    let mut gens = PolyMatrix::zeros(m, m);
    gens[(0, 0)] = lpow[m - 2].clone();
    for k in 1..m {
        gens[(k, k)] = lpow[m - 1 - k].clone();
        for j in 1..k {
            gens[(k - j, k)] = &c[m - j] * &lpow[m - 2 - (k - j)];
        }
    }
    Lattice::from_generators(eq, base, twist, &gens, &lpow[m - 2])
}

/// Normalization over `Q[1/x]` of the chart at infinity of `Σ c_i(x) w^i`, where `c_i` has
/// bidegree weight `(m−i)e + δ`. The fiber coordinate there is `w' = x^{−e}·w`.
pub fn closure_at_infinity(eq: &CoverEquation, e: i64, delta: i64) -> Result<Lattice, FuncFieldError> {
    let chart = chart_at_infinity(eq.original(), e, delta)?;
    maximize(equation_order(Arc::new(chart), BaseRing::InvX, e + delta)?)
}

fn chart_at_infinity(f: &BiPoly, e: i64, delta: i64) -> Result<CoverEquation, FuncFieldError> {
    let c = f.fiber_coeffs();
    let m = c.len() - 1;
    let mut out = Vec::with_capacity(m + 1);
    for (i, ci) in c.iter().enumerate() {
        let bound = (m - i) as i64 * e + delta;
        if ci.degree().is_some_and(|d| d as i64 > bound) || bound < 0 {
            return Err(FuncFieldError::DegreeBound { index: i, bound });
        }
        out.push(ci.reversed(bound as usize));
    }
    make_integral(&BiPoly::from_fiber_coeffs(&out))
}

/// Enlarges a ring lattice to the maximal order containing it.
pub fn maximize(start: Lattice) -> Result<Lattice, FuncFieldError> {
    let mut order = start;
    let mut finished = UniPoly::one();
    loop {
        let form = order.trace_form();
        let disc = form.determinant()?;
        if disc.is_zero() {
            return Err(FuncFieldError::Degenerate);
        }
        let mut candidates = disc.gcd(&disc.derivative()).squarefree_part();
        let known = candidates.gcd(&finished);
        if !known.is_one() {
            candidates = candidates.exact_div(&known).expect("gcd divides");
        }
        if candidates.degree().is_none_or(|d| d == 0) {
            return Ok(order);
        }
        let mults: Vec<PolyMatrix> = (0..order.rank())
            .map(|j| order.basis_multiplication(j))
            .collect::<Result<_, _>>()?;
        let outcomes = split_evaluate(&candidates, |ctx| multiplier_step(ctx, &form, &mults))?;
        let mut next = None;
        for (p, outcome) in outcomes {
            match outcome {
                None => finished = &finished * &p,
                Some(new) if next.is_none() => next = Some(enlarge(&order, &p, &new)?),
                Some(_) => {}
            }
        }
        if let Some(bigger) = next {
            order = bigger;
        }
    }
}

/// Elements `b` (basis coordinates, modulo `p`) with `b/p` in the multiplier ring of the
/// radical of `pO` but not in `O`; `None` when `O` is already maximal at `p`.
fn multiplier_step(
    ctx: &QuotientCtx,
    form: &PolyMatrix,
    mults: &[PolyMatrix],
) -> Result<Option<Vec<Vec<UniPoly>>>, SplitEvent> {
    let m = form.rows();
    let radical = ctx.kernel(&form.to_rows(), m)?;
    if radical.is_empty() {
        return Ok(None);
    }
    let p = ctx.modulus();
    let mut gens = PolyMatrix::zeros(m, m + radical.len());
    for j in 0..m {
        gens[(j, j)] = p.clone();
    }
    for (c, v) in radical.iter().enumerate() {
        for i in 0..m {
            gens[(i, m + c)] = v[i].clone();
        }
    }
    let ideal = gens.hermite_form().expect("contains p·O").basis();
    // Rows indexed by (ideal basis element k, coordinate i); columns by order basis element j.
    let mut rows = vec![vec![UniPoly::zero(); m]; m * m];
    for (j, mult) in mults.iter().enumerate() {
        let image = mult * &ideal;
        for k in 0..m {
            let y = tri_solve_poly(&ideal, &image.column(k)).expect("radical is an ideal");
            for (i, c) in y.into_iter().enumerate() {
                rows[k * m + i][j] = c;
            }
        }
    }
    let new = ctx.kernel(&rows, m)?;
    Ok(if new.is_empty() { None } else { Some(new) })
}

fn enlarge(order: &Lattice, p: &UniPoly, new: &[Vec<UniPoly>]) -> Result<Lattice, FuncFieldError> {
    let m = order.rank();
    let mut gens = PolyMatrix::zeros(m, m + new.len());
    for i in 0..m {
        for j in 0..m {
            gens[(i, j)] = &order.basis()[(i, j)] * p;
        }
    }
    for (c, b) in new.iter().enumerate() {
        let v = order.basis().mul_vec(b);
        for i in 0..m {
            gens[(i, m + c)] = v[i].clone();
        }
    }
    Lattice::from_generators(order.equation_arc(), order.base(), order.twist(), &gens, &(order.denom() * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{transition_matrix, FieldElement};
    use crate::birkhoff::{splitting_type, SplittingType};

    fn bi(coeffs: &[&[i64]]) -> BiPoly {
        BiPoly::from_fiber_coeffs(&coeffs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    fn assert_ring(l: &Lattice) {
        let eq = l.equation();
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                assert!(l.contains_element(&l.element(i).mul(&l.element(j), eq)));
            }
        }
        assert!(l.contains_element(&FieldElement::one(l.rank())));
    }

    #[test]
    fn squarefree_discriminant_gives_power_basis() {
        // η² − (x² − 2): discriminant 4(x² − 2)
        let eq = make_integral(&bi(&[&[2, 0, -1], &[], &[1]])).unwrap();
        let l = integral_closure(&eq).unwrap();
        assert!(l.is_power_basis());
    }

    #[test]
    fn node_is_resolved() {
        // η² − x²(x + 1)
        let eq = make_integral(&bi(&[&[0, 0, -1, -1], &[], &[1]])).unwrap();
        let l = integral_closure(&eq).unwrap();
        assert_eq!(l.basis(), &PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[], &[1]]]));
        assert_eq!(l.denom(), &UniPoly::x());
        assert_ring(&l);
        assert_eq!(maximize(l.clone()).unwrap(), l);
    }

    #[test]
    fn cusp_and_higher_singularities() {
        // η³ − x⁴: closure basis 1, η/x, η²/x²
        let eq = make_integral(&bi(&[&[0, 0, 0, 0, -1], &[], &[], &[1]])).unwrap();
        let l = integral_closure(&eq).unwrap();
        assert_ring(&l);
        assert_eq!(l.volume_degree(), -3);
        // η² − x⁵ has δ-invariant 2
        let eq = make_integral(&bi(&[&[0, 0, 0, 0, 0, -1], &[], &[1]])).unwrap();
        assert_eq!(integral_closure(&eq).unwrap().volume_degree(), -2);
    }

    #[test]
    fn split_moduli_are_handled() {
        // η² − x²(x−1)²(x+3): two nodes, candidates x(x−1) split by the radical computation
        let f = &(&UniPoly::from_ints(&[0, 0, 1]) * &UniPoly::from_ints(&[1, -2, 1])) * &UniPoly::from_ints(&[3, 1]);
        let eq = make_integral(&BiPoly::from_fiber_coeffs(&[-f, UniPoly::zero(), UniPoly::one()])).unwrap();
        let l = integral_closure(&eq).unwrap();
        assert_eq!(l.volume_degree(), -2);
        assert_ring(&l);
    }

    #[test]
    fn equation_order_is_a_ring_over_the_power_basis() {
        // x·w³ + (x + 2)·w² − w + (x² − 1)
        let eq = Arc::new(make_integral(&bi(&[&[-1, 0, 1], &[-1], &[2, 1], &[0, 1]])).unwrap());
        let l = equation_order(eq.clone(), BaseRing::X, 0).unwrap();
        assert_ring(&l);
        assert!(l.contains(&Lattice::power_basis(eq.clone(), BaseRing::X, 0)));
        // index ℓ^{(m−1)(m−2)/2}
        assert_eq!(l.volume_degree(), -1);
        assert_eq!(maximize(l).unwrap(), maximize(Lattice::power_basis(eq, BaseRing::X, 0)).unwrap());
    }

    #[test]
    fn degree_one() {
        let eq = make_integral(&bi(&[&[0, 1], &[1]])).unwrap();
        let l = integral_closure(&eq).unwrap();
        assert!(l.is_power_basis());
        assert_eq!(l.rank(), 1);
    }

    #[test]
    fn repeated_factor_rejected() {
        // (η − x)²
        let eq = make_integral(&bi(&[&[0, 0, 1], &[0, -2], &[1]])).unwrap();
        assert_eq!(integral_closure(&eq), Err(FuncFieldError::Degenerate));
    }

    #[test]
    fn monic_chart_at_infinity_is_diagonal() {
        // e = 2, m = 3, δ = 0: w³ + (x²+1)·w + (x⁶ − x + 5)
        let f = bi(&[&[5, -1, 0, 0, 0, 0, 1], &[1, 0, 1], &[], &[1]]);
        let eq = make_integral(&f).unwrap();
        let l = closure_at_infinity(&eq, 2, 0).unwrap();
        assert!(l.is_power_basis());
        let ambient = l.ambient_basis();
        assert_eq!(ambient[(2, 2)].den(), &UniPoly::monomial(crate::arith::Rat::one(), 4));
    }

    #[test]
    fn hyperelliptic_transition() {
        // w² + x·w + (x² + 1) on F_1
        let f = bi(&[&[1, 0, 1], &[0, 1], &[1]]);
        let eq = make_integral(&f).unwrap();
        let m0 = integral_closure(&eq).unwrap();
        let m1 = closure_at_infinity(&eq, 1, 0).unwrap();
        let t = transition_matrix(&m0, &m1).unwrap();
        assert_eq!(splitting_type(&t).unwrap(), SplittingType::new(vec![0, -1]));
    }
}
