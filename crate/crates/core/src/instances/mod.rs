//! Curves in `|mH + δF|` on the Hirzebruch surface `F_e`, their affine charts, a decision
//! procedure for smoothness, random generation, and plane curves projected from a point.
//!
//! Cox coordinates are `(s, t, u, v)`; a curve is `F = Σ c_i(s,t)·u^{m−i}·v^i` with `c_i`
//! a binary form of degree `(m−i)e + δ`. A form is stored through its dehomogenization
//! `c_i(x, 1)`, coefficient `k` belonging to `s^k t^{deg−k}`. The chart at zero uses
//! `x = s/t` and `w = v/(u t^e)`; the chart at infinity uses `x' = t/s` and `w' = x^{−e}·w`;
//! the second fiber chart uses `z = 1/w`. The section `Y₀` is `u = 0`, i.e. `w = ∞`.

mod plane;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{resultant_fiber, split_evaluate, BiPoly, Rat, UniPoly};

pub use plane::{
    plane_to_cox, random_plane_curve, tangency_order, Form3, PlaneCase, PlaneCurve, PlaneCover, PlaneError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("base point requires delta = 1")]
    NotVertexCase,
    #[error("no acceptable sample after {0} attempts")]
    Exhausted(usize),
    #[error("malformed instance file: {0}")]
    Format(String),
}

/// A base value on P¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseValue {
    Finite(Rat),
    Infinity,
}

impl Serialize for BaseValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            BaseValue::Finite(r) => r.serialize(serializer),
            BaseValue::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for BaseValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseValue::Finite(r) => write!(f, "{r}"),
            BaseValue::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxCurve {
    m: usize,
    e: i64,
    delta: i64,
    coefficients: Vec<UniPoly>,
}

impl CoxCurve {
    pub fn new(m: usize, e: i64, delta: i64, coefficients: Vec<UniPoly>) -> Result<CoxCurve, InstanceError> {
        if m < 1 || e < 1 || !(0..=1).contains(&delta) {
            return Err(InstanceError::Invalid(format!("m = {m}, e = {e}, delta = {delta}")));
        }
        if coefficients.len() != m + 1 {
            return Err(InstanceError::Invalid(format!("expected {} coefficient forms", m + 1)));
        }
        for (i, c) in coefficients.iter().enumerate() {
            let bound = (m - i) as i64 * e + delta;
            if c.degree().is_some_and(|d| d as i64 > bound) {
                return Err(InstanceError::Invalid(format!("c_{i} exceeds degree {bound}")));
            }
        }
        if coefficients[0].is_zero() || coefficients[m].is_zero() {
            return Err(InstanceError::Invalid("c_0 and c_m must be nonzero".into()));
        }
        Ok(CoxCurve { m, e, delta, coefficients })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn coefficients(&self) -> &[UniPoly] {
        &self.coefficients
    }

    /// Degree of the binary form `c_i`.
    pub fn form_degree(&self, i: usize) -> usize {
        ((self.m - i) as i64 * self.e + self.delta) as usize
    }

    /// `c_i(1, x')`.
    fn form_at_infinity(&self, i: usize) -> UniPoly {
        self.coefficients[i].reversed(self.form_degree(i))
    }

    pub fn from_json(text: &str) -> Result<CoxCurve, InstanceError> {
        let file: CoxCurveFile = serde_json::from_str(text).map_err(|e| InstanceError::Format(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CoxCurveFile::from(self)).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct CoxCurveFile {
    m: usize,
    e: i64,
    delta: i64,
    coefficients: BTreeMap<String, UniPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plane: Option<serde_json::Value>,
}

impl TryFrom<CoxCurveFile> for CoxCurve {
    type Error = InstanceError;
    fn try_from(f: CoxCurveFile) -> Result<CoxCurve, InstanceError> {
        let mut coefficients = vec![UniPoly::zero(); f.m + 1];
        for (k, v) in f.coefficients {
            let i: usize = k.parse().map_err(|_| InstanceError::Format(format!("bad coefficient index {k}")))?;
            if i > f.m {
                return Err(InstanceError::Format(format!("coefficient index {i} above m")));
            }
            coefficients[i] = v;
        }
        CoxCurve::new(f.m, f.e, f.delta, coefficients)
    }
}

impl From<&CoxCurve> for CoxCurveFile {
    fn from(c: &CoxCurve) -> CoxCurveFile {
        CoxCurveFile {
            m: c.m,
            e: c.e,
            delta: c.delta,
            coefficients: c.coefficients.iter().enumerate().map(|(i, p)| (i.to_string(), p.clone())).collect(),
            plane: None,
        }
    }
}

impl Serialize for CoxCurve {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoxCurveFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoxCurve {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        CoxCurveFile::deserialize(deserializer)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// The four affine dehomogenizations, fiber variable second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartEquations {
    /// `(x, w)`: `Σ c_i(x,1) w^i`.
    pub zero_w: BiPoly,
    /// `(x, z)`: `Σ c_i(x,1) z^{m−i}`.
    pub zero_z: BiPoly,
    /// `(x', w')`: `Σ c_i(1,x') w'^i`.
    pub inf_w: BiPoly,
    /// `(x', z')`.
    pub inf_z: BiPoly,
}

pub fn chart_equations(x: &CoxCurve) -> ChartEquations {
    let m = x.m;
    let zero: Vec<UniPoly> = x.coefficients.clone();
    let inf: Vec<UniPoly> = (0..=m).map(|i| x.form_at_infinity(i)).collect();
    let rev = |v: &[UniPoly]| v.iter().rev().cloned().collect::<Vec<_>>();
    ChartEquations {
        zero_w: BiPoly::from_fiber_coeffs(&zero),
        zero_z: BiPoly::from_fiber_coeffs(&rev(&zero)),
        inf_w: BiPoly::from_fiber_coeffs(&inf),
        inf_z: BiPoly::from_fiber_coeffs(&rev(&inf)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularWitness {
    /// Chart where the singular points were found.
    pub chart: String,
    /// Squarefree polynomial in the chart's base variable whose roots carry singular
    /// points; zero when the curve is not reduced.
    pub locus: UniPoly,
    /// Rational base values (in the coordinate `x`) among the witnesses.
    pub base_values: Vec<BaseValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    Singular(SingularWitness),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

/// Decides smoothness of the curve over the algebraic closure of Q.
///
/// The chart `(x, w)` is decided in full: base values of singular points are common roots of
/// `Res_w(F, F_w)` and `Res_w(F, F_x)`, and over each factor of its squarefree part the gcd of `F`, `F_w`, `F_x`
/// is computed with dynamic splitting. The remaining points (`w = ∞`, `x = ∞`) are finitely
/// many fibers and are checked by univariate gcds.
pub fn smoothness_check(x: &CoxCurve) -> Smoothness {
    let ch = chart_equations(x);
    if let Some(locus) = affine_singular_locus(&ch.zero_w) {
        let base_values = if locus.is_zero() {
            Vec::new()
        } else {
            rational_roots(&locus).into_iter().map(BaseValue::Finite).collect()
        };
        return Smoothness::Singular(SingularWitness { chart: "x,w".into(), locus, base_values });
    }
    // z = 0 over finite x: F = c_m, F_x = c_m', F_z = c_{m−1}
    let m = x.m;
    let cm = &x.coefficients[m];
    let g = cm.gcd(&cm.derivative()).gcd(&x.coefficients[m - 1]);
    if !g.is_constant() {
        let base_values = rational_roots(&g).into_iter().map(BaseValue::Finite).collect();
        return Smoothness::Singular(SingularWitness { chart: "x,z".into(), locus: g, base_values });
    }
    // x' = 0
    if fiber_singular(&ch.inf_w) || fiber_singular(&ch.inf_z) {
        return Smoothness::Singular(SingularWitness {
            chart: "x',w'".into(),
            locus: UniPoly::x(),
            base_values: vec![BaseValue::Infinity],
        });
    }
    Smoothness::Smooth
}

fn affine_singular_locus(f: &BiPoly) -> Option<UniPoly> {
    let fw = f.d_fiber();
    let fx = f.d_base();
    let r = resultant_fiber(f, &fw);
    if r.is_zero() {
        return Some(UniPoly::zero());
    }
    // base values of singular points also annihilate Res_w(F, F_x)
    let r2 = resultant_fiber(f, &fx);
    let g = if r2.is_zero() { r.squarefree_part() } else { r.gcd(&r2).squarefree_part() };
    if g.is_constant() {
        return None;
    }
    let polys = [f.fiber_coeffs(), fw.fiber_coeffs(), fx.fiber_coeffs()];
    let parts = split_evaluate(&g, |ctx| Ok(ctx.poly_gcd(&polys)?.len() != 1)).expect("squarefree modulus");
    let locus = parts.into_iter().filter(|(_, bad)| *bad).fold(UniPoly::one(), |acc, (p, _)| &acc * &p);
    (!locus.is_one()).then_some(locus)
}

/// Singular point on the fiber over base value 0 of an affine chart.
fn fiber_singular(f: &BiPoly) -> bool {
    let zero = Rat::zero();
    let g0 = f.eval_base(&zero);
    let gx = f.d_base().eval_base(&zero);
    let gw = f.d_fiber().eval_base(&zero);
    let g = g0.gcd(&gx).gcd(&gw);
    g.is_zero() || !g.is_constant()
}

/// Rational roots, found by the rational root test when the coefficients are small enough.
pub fn rational_roots(p: &UniPoly) -> Vec<Rat> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let v = p.valuation().unwrap_or(0);
    if v > 0 {
        out.push(Rat::zero());
    }
    let lcm = p.coeffs().iter().fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
    let low = ints[v].abs().to_u64();
    let high = ints[deg].abs().to_u64();
    let (Some(low), Some(high)) = (low, high) else { return out };
    if low > 1_000_000_000_000 || high > 1_000_000_000_000 {
        return out;
    }
    let mut seen = Vec::new();
    for a in divisors(low) {
        for b in divisors(high) {
            for sign in [1i64, -1] {
                let r = Rat::new(BigInt::from(a) * sign, BigInt::from(b));
                if !seen.contains(&r) && p.eval(&r).is_zero() {
                    seen.push(r.clone());
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Base value of `X ∩ Y₀` for `δ = 1`, the root of the linear form `c_m`.
pub fn base_point(x: &CoxCurve) -> Result<BaseValue, InstanceError> {
    if x.delta != 1 {
        return Err(InstanceError::NotVertexCase);
    }
    let c = &x.coefficients[x.m];
    let (beta, alpha) = (c.coeff(0), c.coeff(1));
    if alpha.is_zero() {
        Ok(BaseValue::Infinity)
    } else {
        Ok(BaseValue::Finite(-(&beta / &alpha)))
    }
}

/// Automorphism of the base used to move a point to `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseChange {
    Identity,
    /// `s ↦ s + x0·t`: the new `x` is the old `x − x0`.
    Translate(Rat),
    /// `s ↔ t`: the new `x` is the old `1/x`.
    Swap,
}

impl BaseChange {
    /// Old coordinate of a point with new coordinate `x`.
    pub fn to_original(&self, x: &BaseValue) -> BaseValue {
        match (self, x) {
            (BaseChange::Identity, v) => v.clone(),
            (BaseChange::Translate(x0), BaseValue::Finite(r)) => BaseValue::Finite(r + x0),
            (BaseChange::Translate(_), BaseValue::Infinity) => BaseValue::Infinity,
            (BaseChange::Swap, BaseValue::Finite(r)) if r.is_zero() => BaseValue::Infinity,
            (BaseChange::Swap, BaseValue::Finite(r)) => BaseValue::Finite(r.recip()),
            (BaseChange::Swap, BaseValue::Infinity) => BaseValue::Finite(Rat::zero()),
        }
    }
}

/// Moves the base point of a `δ = 1` curve to `x = 0`.
pub fn normalize_base_point(x: &CoxCurve) -> Result<(CoxCurve, BaseChange), InstanceError> {
    match base_point(x)? {
        BaseValue::Finite(x0) if x0.is_zero() => Ok((x.clone(), BaseChange::Identity)),
        BaseValue::Finite(x0) => {
            let shift = UniPoly::new(vec![x0.clone(), Rat::one()]);
            let coefficients = x.coefficients.iter().map(|c| c.compose(&shift)).collect();
            Ok((CoxCurve { coefficients, ..x.clone() }, BaseChange::Translate(x0)))
        }
        BaseValue::Infinity => {
            let coefficients = (0..=x.m).map(|i| x.form_at_infinity(i)).collect();
            Ok((CoxCurve { coefficients, ..x.clone() }, BaseChange::Swap))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedInstance {
    pub curve: CoxCurve,
    pub seed: u64,
    pub rejections: usize,
}

pub const DEFAULT_ATTEMPTS: usize = 100;

/// Integer form of exact degree `degree`.
fn random_form<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> UniPoly {
    let mut c: Vec<Rat> = (0..degree).map(|_| Rat::from(rng.gen_range(-bound..=bound))).collect();
    let lead = loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            break v;
        }
    };
    c.push(Rat::from(lead));
    UniPoly::new(c)
}

/// Rejection-samples a smooth curve whose direct image passes the connectedness gate.
pub fn random_instance(m: usize, e: i64, delta: i64, seed: u64, bound: i64) -> Result<GeneratedInstance, InstanceError> {
    random_instance_with_budget(m, e, delta, seed, bound, DEFAULT_ATTEMPTS)
}

pub fn random_instance_with_budget(
    m: usize,
    e: i64,
    delta: i64,
    seed: u64,
    bound: i64,
    attempts: usize,
) -> Result<GeneratedInstance, InstanceError> {
    if m < 2 || e < 1 || !(0..=1).contains(&delta) || bound < 1 {
        return Err(InstanceError::Invalid(format!("m = {m}, e = {e}, delta = {delta}, bound = {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..attempts {
        let coefficients: Vec<UniPoly> =
            (0..=m).map(|i| random_form(&mut rng, (m - i) * e as usize + delta as usize, bound)).collect();
        let Ok(curve) = CoxCurve::new(m, e, delta, coefficients) else { continue };
        if !smoothness_check(&curve).is_smooth() {
            continue;
        }
        if crate::pipeline::structure_splitting(&curve).is_ok_and(|t| crate::pipeline::connectedness_gate(&t).is_ok()) {
            return Ok(GeneratedInstance { curve, seed, rejections: attempt });
        }
    }
    Err(InstanceError::Exhausted(attempts))
}

/// Seed for instance `index` of a family, independent of scheduling order.
pub fn derive_seed(base: u64, tag: &[i64], index: u64) -> u64 {
    let mut h: u64 = base ^ 0x9e37_79b9_7f4a_7c15;
    for &t in tag.iter().chain(std::iter::once(&(index as i64))) {
        h ^= t as u64;
        h = h.wrapping_mul(0x1000_0000_01b3).rotate_left(29);
        h ^= h >> 31;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(m: usize, e: i64, delta: i64, c: &[&[i64]]) -> CoxCurve {
        CoxCurve::new(m, e, delta, c.iter().map(|v| UniPoly::from_ints(v)).collect()).unwrap()
    }

    #[test]
    fn chart_example() {
        // c_0 = s² + t², c_1 = s, c_2 = 1
        let x = curve(2, 1, 0, &[&[1, 0, 1], &[0, 1], &[1]]);
        let ch = chart_equations(&x);
        let expect = BiPoly::from_fiber_coeffs(&[UniPoly::from_ints(&[1, 0, 1]), UniPoly::x(), UniPoly::one()]);
        assert_eq!(ch.zero_w, expect);
        assert_eq!(ch.zero_z, ch.zero_w.fiber_reversed(2));
        let y = curve(2, 1, 1, &[&[1, 0, 0, 1], &[0, 1], &[-2, 1]]);
        assert_eq!(chart_equations(&y).zero_w.fiber_lc().degree(), Some(1));
    }

    #[test]
    fn smooth_and_nodal() {
        let x = curve(2, 1, 0, &[&[1, 0, 1], &[0, 1], &[1]]);
        assert!(smoothness_check(&x).is_smooth());
        // w² = x²(x+1)(x+2) on F_2
        let nodal = curve(2, 2, 0, &[&[0, 0, -2, -3, -1], &[], &[1]]);
        match smoothness_check(&nodal) {
            Smoothness::Singular(w) => {
                assert_eq!(w.base_values, vec![BaseValue::Finite(Rat::zero())]);
                assert_eq!(w.locus, UniPoly::x());
            }
            Smoothness::Smooth => panic!("node missed"),
        }
        let section = CoxCurve::new(1, 3, 0, vec![UniPoly::from_ints(&[1, 2, 0, 1]), UniPoly::one()]).unwrap();
        assert!(smoothness_check(&section).is_smooth());
    }

    #[test]
    fn singular_point_over_infinity() {
        // c_0 = t⁴ + s t³ becomes x'³(x' + 1) at infinity: a cusp there
        let at_inf = curve(2, 2, 0, &[&[1, 1, 0, 0, 0], &[], &[1]]);
        match smoothness_check(&at_inf) {
            Smoothness::Singular(w) => assert_eq!(w.base_values, vec![BaseValue::Infinity]),
            Smoothness::Smooth => panic!("cusp at infinity missed"),
        }
    }

    #[test]
    fn reducible_member_is_singular() {
        // (w − x)(w + x + 1) on F_1
        let x = curve(2, 1, 0, &[&[0, -1, -1], &[1], &[1]]);
        assert!(!smoothness_check(&x).is_smooth());
    }

    #[test]
    fn base_points() {
        let x = curve(2, 1, 1, &[&[1, 0, 0, 1], &[3], &[-2, 1]]);
        assert_eq!(base_point(&x), Ok(BaseValue::Finite(Rat::from(2))));
        let y = curve(2, 1, 1, &[&[1, 0, 0, 1], &[3], &[0, 1]]);
        assert_eq!(base_point(&y), Ok(BaseValue::Finite(Rat::zero())));
        let z = curve(2, 1, 1, &[&[1, 0, 0, 1], &[3], &[1]]);
        assert_eq!(base_point(&z), Ok(BaseValue::Infinity));
        let (moved, change) = normalize_base_point(&z).unwrap();
        assert_eq!(base_point(&moved), Ok(BaseValue::Finite(Rat::zero())));
        assert_eq!(change.to_original(&BaseValue::Finite(Rat::zero())), BaseValue::Infinity);
        let (moved, change) = normalize_base_point(&x).unwrap();
        assert_eq!(base_point(&moved), Ok(BaseValue::Finite(Rat::zero())));
        assert_eq!(change.to_original(&BaseValue::Finite(Rat::zero())), BaseValue::Finite(Rat::from(2)));
        assert_eq!(base_point(&curve(2, 1, 0, &[&[1, 0, 1], &[0, 1], &[1]])), Err(InstanceError::NotVertexCase));
    }

    #[test]
    fn base_point_matches_section_intersection() {
        // u = 0 leaves c_m(s,t) v^m, whose zero is the base point
        let x = curve(3, 1, 1, &[&[1, 0, 0, 0, 1], &[2, 1], &[0, 1, 1], &[5, -3]]);
        let BaseValue::Finite(q) = base_point(&x).unwrap() else { panic!() };
        assert!(x.coefficients()[3].eval(&q).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let x = curve(2, 1, 1, &[&[1, 0, 0, 1], &[3], &[-2, 1]]);
        let text = x.to_json();
        assert!(text.contains("\"-2/1\""));
        assert_eq!(CoxCurve::from_json(&text).unwrap(), x);
        assert!(CoxCurve::from_json("{\"m\": 2}").is_err());
    }

    #[test]
    fn rational_root_search() {
        let p = &UniPoly::from_ints(&[-2, 3]) * &UniPoly::from_ints(&[0, 1, 0, 1]);
        assert_eq!(rational_roots(&p), vec![Rat::zero(), Rat::new(2, 3)]);
    }

    #[test]
    fn generator_rejects_bad_parameters() {
        assert!(matches!(random_instance(1, 1, 0, 1, 5), Err(InstanceError::Invalid(_))));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_instance(2, 1, 0, 1, 5).unwrap();
        let b = random_instance(2, 1, 0, 1, 5).unwrap();
        assert_eq!(a, b);
        let c = random_instance(3, 2, 1, 7, 5).unwrap();
        assert!(matches!(base_point(&c.curve), Ok(_)));
        for i in 0..=c.curve.m() {
            assert!(c.curve.coefficients()[i].degree().unwrap_or(0) <= c.curve.form_degree(i));
        }
    }
}
