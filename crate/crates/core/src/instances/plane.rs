//! Plane curves projected from a point onto a line, read as curves on `F_1`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CoxCurve, InstanceError};
use crate::arith::{Rat, UniPoly};
use crate::polymat::{FieldMatrixExt, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("form is zero or not homogeneous")]
    NotHomogeneous,
    #[error("projection center lies on the target line")]
    CenterOnLine,
    #[error("degenerate point or line")]
    DegenerateData,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("curve is singular at the projection center")]
    SingularAtPoint,
    #[error("tangent line meets the curve with multiplicity {0} at the center (inflection)")]
    Inflection(usize),
    #[error("tangent line is a component of the curve")]
    LineComponent,
    #[error("the target line is a component of the curve")]
    LineInCurve,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Homogeneous polynomial in `X, Y, Z`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Form3 {
    terms: BTreeMap<[u32; 3], Rat>,
}

impl Form3 {
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], Rat)>) -> Form3 {
        let mut out = Form3::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: &Rat) {
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rat)> {
        self.terms.iter()
    }

    /// Total degree, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += &(c * &(&(&p[0].pow(e[0]) * &p[1].pow(e[1])) * &p[2].pow(e[2])));
        }
        acc
    }

    pub fn gradient(&self) -> [Form3; 3] {
        std::array::from_fn(|k| {
            Form3::from_terms(self.terms.iter().filter(|(e, _)| e[k] > 0).map(|(e, c)| {
                let mut d = *e;
                d[k] -= 1;
                (d, c * &Rat::from(e[k] as i64))
            }))
        })
    }

    fn mul(&self, other: &Form3) -> Form3 {
        let mut out = Form3::default();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], &(c * d));
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Form3 {
        (0..k).fold(Form3::from_terms([([0, 0, 0], Rat::one())]), |acc, _| acc.mul(self))
    }

    fn linear(coeffs: [Rat; 3]) -> Form3 {
        Form3::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| {
            let mut e = [0; 3];
            e[k] = 1;
            (e, c)
        }))
    }

    /// `G(a·X + b·Y + c·Z)` with the points `a, b, c` as columns of the substitution.
    pub fn substitute(&self, cols: &[[Rat; 3]; 3]) -> Form3 {
        let lin: [Form3; 3] =
            std::array::from_fn(|k| Form3::linear([cols[0][k].clone(), cols[1][k].clone(), cols[2][k].clone()]));
        let mut out = Form3::default();
        for (e, c) in &self.terms {
            let t = lin[0].pow(e[0]).mul(&lin[1].pow(e[1])).mul(&lin[2].pow(e[2]));
            for (f, d) in t.terms {
                out.add_term(f, &(c * &d));
            }
        }
        out
    }

    /// `λ ↦ G(p + λ·d)`.
    pub fn along(&self, p: &[Rat; 3], d: &[Rat; 3]) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for k in 0..3 {
                t = &t * &UniPoly::new(vec![p[k].clone(), d[k].clone()]).pow(e[k]);
            }
            acc = &acc + &t;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    exp: [u32; 3],
    coeff: Rat,
}

impl Serialize for Form3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermFile> = self.terms.iter().map(|(e, c)| TermFile { exp: *e, coeff: c.clone() }).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form3 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<TermFile>::deserialize(deserializer)?;
        Ok(Form3::from_terms(v.into_iter().map(|t| (t.exp, t.coeff))))
    }
}

/// A plane curve `G = 0` with a projection center `P` and a target line `L` (a linear form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCurve {
    #[serde(rename = "G")]
    pub g: Form3,
    #[serde(rename = "P")]
    pub p: [Rat; 3],
    #[serde(rename = "L")]
    pub l: [Rat; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneCase {
    /// Center off the curve.
    A,
    /// Center on the curve.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneCover {
    pub curve: CoxCurve,
    pub case: PlaneCase,
    pub plane_degree: u32,
    pub cover_degree: usize,
    pub tangency: Option<usize>,
}

impl PlaneCurve {
    pub fn new(g: Form3, p: [Rat; 3], l: [Rat; 3]) -> Result<PlaneCurve, PlaneError> {
        if g.degree().is_none() {
            return Err(PlaneError::NotHomogeneous);
        }
        if p.iter().all(Rat::is_zero) || l.iter().all(Rat::is_zero) {
            return Err(PlaneError::DegenerateData);
        }
        let c = PlaneCurve { g, p, l };
        if c.l_at_p().is_zero() {
            return Err(PlaneError::CenterOnLine);
        }
        Ok(c)
    }

    pub fn degree(&self) -> u32 {
        self.g.degree().unwrap_or(0)
    }

    fn l_at_p(&self) -> Rat {
        (0..3).fold(Rat::zero(), |acc, k| &acc + &(&self.l[k] * &self.p[k]))
    }

    pub fn from_json(text: &str) -> Result<PlaneCurve, InstanceError> {
        let c: PlaneCurve = serde_json::from_str(text).map_err(|e| InstanceError::Format(e.to_string()))?;
        PlaneCurve::new(c.g, c.p, c.l).map_err(|e| InstanceError::Format(e.to_string()))
    }
}

fn kernel_of_form(v: &[Rat; 3]) -> Vec<[Rat; 3]> {
    let m = Matrix::from_rows(vec![v.to_vec()]).expect("one row");
    m.kernel().into_iter().map(|k| [k[0].clone(), k[1].clone(), k[2].clone()]).collect()
}

/// Intersection multiplicity at `P` of the curve with its tangent line there.
pub fn tangency_order(c: &PlaneCurve) -> Result<usize, PlaneError> {
    if !c.g.eval(&c.p).is_zero() {
        return Err(PlaneError::PointNotOnCurve);
    }
    let grad: [Rat; 3] = c.g.gradient().map(|d| d.eval(&c.p));
    if grad.iter().all(Rat::is_zero) {
        return Err(PlaneError::SingularAtPoint);
    }
    // tangent line is grad·X = 0; it contains P, so pick a kernel vector independent of P
    let dir = kernel_of_form(&grad)
        .into_iter()
        .find(|d| {
            let cross = [
                &(&c.p[1] * &d[2]) - &(&c.p[2] * &d[1]),
                &(&c.p[2] * &d[0]) - &(&c.p[0] * &d[2]),
                &(&c.p[0] * &d[1]) - &(&c.p[1] * &d[0]),
            ];
            cross.iter().any(|x| !x.is_zero())
        })
        .expect("tangent line is two-dimensional");
    let r = c.g.along(&c.p, &dir);
    r.valuation().ok_or(PlaneError::LineComponent)
}

/// The strict transform of the curve on the blow-up of the plane at `P`, as a curve on `F_1`
/// projecting onto `L`.
pub fn plane_to_cox(c: &PlaneCurve) -> Result<PlaneCover, PlaneError> {
    let c = PlaneCurve::new(c.g.clone(), c.p.clone(), c.l.clone())?;
    let m = c.degree();
    let on_curve = c.g.eval(&c.p).is_zero();
    let tangency = if on_curve {
        let order = tangency_order(&c)?;
        if order != 2 {
            return Err(PlaneError::Inflection(order));
        }
        Some(order)
    } else {
        None
    };
    let line = kernel_of_form(&c.l);
    let cols = [line[0].clone(), line[1].clone(), c.p.clone()];
    let h = c.g.substitute(&cols);
    // coefficient of r^i is a binary form of degree m − i in (s, t)
    let mut forms = vec![vec![Rat::zero(); m as usize + 1]; m as usize + 1];
    for (e, coef) in h.terms() {
        forms[e[2] as usize][e[0] as usize] = coef.clone();
    }
    let mut coefficients: Vec<UniPoly> = forms.into_iter().map(UniPoly::new).collect();
    if coefficients[0].is_zero() {
        return Err(PlaneError::LineInCurve);
    }
    let (case, cover_degree, delta) = if on_curve {
        coefficients.pop();
        (PlaneCase::B, m as usize - 1, 1)
    } else {
        (PlaneCase::A, m as usize, 0)
    };
    let curve = CoxCurve::new(cover_degree, 1, delta, coefficients)?;
    Ok(PlaneCover { curve, case, plane_degree: m, cover_degree, tangency })
}

/// Random integer plane curve of degree `m` with center `(0:0:1)` and line `Z = 0`; in case `B`
/// the center lies on the curve, with a nonzero tangent direction. Smoothness is not checked.
pub fn random_plane_curve(m: u32, case: PlaneCase, seed: u64, bound: i64) -> PlaneCurve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for a in 0..=m {
        for b in 0..=(m - a) {
            let z = m - a - b;
            let mut c = rng.gen_range(-bound..=bound);
            match (case, z) {
                (PlaneCase::A, z) if z == m => c = nonzero(&mut rng, bound),
                (PlaneCase::B, z) if z == m => c = 0,
                (PlaneCase::B, z) if z + 1 == m && a == 1 => c = nonzero(&mut rng, bound),
                _ => {}
            }
            terms.push(([a, b, z], Rat::from(c)));
        }
    }
    let zero = Rat::zero;
    PlaneCurve::new(Form3::from_terms(terms), [zero(), zero(), Rat::one()], [zero(), zero(), Rat::one()])
        .expect("valid center and line")
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{chart_equations, smoothness_check};

    fn form(terms: &[([u32; 3], i64)]) -> Form3 {
        Form3::from_terms(terms.iter().map(|(e, c)| (*e, Rat::from(*c))))
    }

    fn pt(v: [i64; 3]) -> [Rat; 3] {
        v.map(Rat::from)
    }

    fn fermat() -> Form3 {
        form(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)])
    }

    #[test]
    fn conic_tangency() {
        let conic = form(&[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], -1)]);
        let c = PlaneCurve::new(conic, pt([0, 1, 1]), pt([0, 1, 0])).unwrap();
        assert_eq!(tangency_order(&c), Ok(2));
    }

    #[test]
    fn flex_of_cubic() {
        // y²z = x³ + xz² at (0:1:0)
        let g = form(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], -1)]);
        let c = PlaneCurve::new(g, pt([0, 1, 0]), pt([0, 1, 0])).unwrap();
        assert_eq!(tangency_order(&c), Ok(3));
        assert_eq!(plane_to_cox(&c), Err(PlaneError::Inflection(3)));
    }

    #[test]
    fn tangency_errors() {
        let c = PlaneCurve::new(fermat(), pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        assert_eq!(tangency_order(&c), Err(PlaneError::PointNotOnCurve));
        // nodal cubic y²z = x²(x + z) at the origin
        let g = form(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
        let c = PlaneCurve::new(g, pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        assert_eq!(tangency_order(&c), Err(PlaneError::SingularAtPoint));
        assert_eq!(plane_to_cox(&c), Err(PlaneError::SingularAtPoint));
        assert_eq!(PlaneCurve::new(fermat(), pt([0, 0, 1]), pt([1, 1, 0])), Err(PlaneError::CenterOnLine));
    }

    #[test]
    fn fermat_case_a() {
        let c = PlaneCurve::new(fermat(), pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        let cover = plane_to_cox(&c).unwrap();
        assert_eq!(cover.case, PlaneCase::A);
        assert_eq!((cover.cover_degree, cover.curve.e(), cover.curve.delta()), (4, 1, 0));
        assert!(smoothness_check(&cover.curve).is_smooth());
        let _ = chart_equations(&cover.curve);
    }

    #[test]
    fn conic_off_center() {
        let conic = form(&[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], -1)]);
        let c = PlaneCurve::new(conic, pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        let cover = plane_to_cox(&c).unwrap();
        assert_eq!((cover.case, cover.cover_degree), (PlaneCase::A, 2));
    }

    #[test]
    fn quartic_through_center() {
        // x⁴ + y⁴ + y z³ − x z³... center (0:0:1) lies on it with tangent y = 0
        let g = form(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 1, 3], 1), ([2, 0, 2], 1)]);
        let c = PlaneCurve::new(g, pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        assert_eq!(tangency_order(&c), Ok(2));
        let cover = plane_to_cox(&c).unwrap();
        assert_eq!(cover.case, PlaneCase::B);
        assert_eq!((cover.cover_degree, cover.curve.delta()), (3, 1));
        // c_3 = t: the base point lies over x = ∞
        assert_eq!(cover.curve.form_degree(3), 1);
        assert_eq!(crate::instances::base_point(&cover.curve), Ok(crate::instances::BaseValue::Infinity));
    }

    #[test]
    fn substitution_preserves_values() {
        let g = form(&[([2, 1, 0], 3), ([0, 1, 2], -1), ([1, 1, 1], 2)]);
        let cols = [pt([1, 2, 0]), pt([0, 1, -1]), pt([2, 0, 1])];
        let h = g.substitute(&cols);
        let x = pt([3, -1, 2]);
        let image: [Rat; 3] = std::array::from_fn(|k| {
            &(&(&cols[0][k] * &x[0]) + &(&cols[1][k] * &x[1])) + &(&cols[2][k] * &x[2])
        });
        assert_eq!(h.eval(&x), g.eval(&image));
    }

    #[test]
    fn random_generator_shapes() {
        for m in 3..=5 {
            let a = random_plane_curve(m, PlaneCase::A, 11, 3);
            assert!(!a.g.eval(&a.p).is_zero());
            let b = random_plane_curve(m, PlaneCase::B, 11, 3);
            assert!(b.g.eval(&b.p).is_zero());
            assert_eq!(b.degree(), m);
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = PlaneCurve::new(fermat(), pt([0, 0, 1]), pt([0, 0, 1])).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"exp\":[4,0,0]"));
        assert_eq!(PlaneCurve::from_json(&text).unwrap(), c);
    }
}
