//! Intersection theory on decomposable ruled surfaces `B = P(O ⊕ O(E))` over a curve of
//! genus `γ`, pushforwards of `O_B(k)`, and the splitting predictions for direct images of
//! m-secant curves.
//!
//! Classes are written `a·Y₀ + b·F` with `Y₀` the negative section and `F` a fiber, so the
//! tautological class is `H = Y₀ + e·F`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::birkhoff::SplittingType;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid surface parameters: {0}")]
    InvalidSurface(String),
    #[error("splitting type {0} has a positive entry")]
    PositiveEntry(String),
    #[error("splitting type {0} has no zero entry")]
    MissingZero(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub gamma: u32,
    pub e: i64,
    pub delta: i64,
}

impl SurfaceModel {
    pub fn new(gamma: u32, e: i64, delta: i64) -> Result<SurfaceModel, GeometryError> {
        if e < 1 || delta < 0 {
            return Err(GeometryError::InvalidSurface(format!("e = {e}, delta = {delta}")));
        }
        Ok(SurfaceModel { gamma, e, delta })
    }

    pub fn rational(e: i64) -> SurfaceModel {
        SurfaceModel { gamma: 0, e, delta: 0 }
    }

    pub fn canonical_base_degree(&self) -> i64 {
        2 * self.gamma as i64 - 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const Y0: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const F: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> DivisorClass {
        DivisorClass { a, b }
    }

    pub fn h(e: i64) -> DivisorClass {
        DivisorClass { a: 1, b: e }
    }

    /// Class of a curve in `|mH + δF|`.
    pub fn m_secant(m: i64, e: i64, delta: i64) -> DivisorClass {
        DivisorClass { a: m, b: m * e + delta }
    }

    /// Parses `"3H"`, `"2H+F"`, `"Y0"`, `"H-2F"` and similar sums over `{H, Y0, F}`.
    pub fn parse(s: &str, e: i64) -> Option<DivisorClass> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return None;
        }
        let mut out = DivisorClass::new(0, 0);
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let coeff: i64 = if split == 0 { 1 } else { term[..split].parse().ok()? };
            let base = match &term[split..] {
                "H" => DivisorClass::h(e),
                "Y0" | "Y₀" => DivisorClass::Y0,
                "F" => DivisorClass::F,
                "" => return None,
                _ => return None,
            };
            out = out + base.scale(sign * coeff);
        }
        Some(out)
    }

    pub fn scale(self, k: i64) -> DivisorClass {
        DivisorClass { a: k * self.a, b: k * self.b }
    }
}

impl std::ops::Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass { a: self.a + o.a, b: self.b + o.b }
    }
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·Y0 + {}·F", self.a, self.b)
    }
}

/// `Y₀² = −e`, `Y₀·F = 1`, `F² = 0`.
pub fn intersect(d1: DivisorClass, d2: DivisorClass, s: &SurfaceModel) -> i64 {
    -s.e * d1.a * d2.a + d1.a * d2.b + d1.b * d2.a
}

pub fn canonical_class(s: &SurfaceModel) -> DivisorClass {
    DivisorClass { a: -2, b: s.canonical_base_degree() - s.e }
}

/// Arithmetic genus from `2g − 2 = (K + D)·D`.
pub fn adjunction_genus(d: DivisorClass, s: &SurfaceModel) -> i64 {
    intersect(canonical_class(s) + d, d, s) / 2 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverCase {
    /// The curve avoids the vertex, class `mH`.
    A,
    /// The curve passes through the vertex, class `mH + F`.
    B,
}

fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

pub fn genus_formula(m: i64, e: i64, gamma: u32, case: CoverCase) -> i64 {
    let g = gamma as i64;
    match case {
        CoverCase::A => binom2(m) * e + m * g + 1 - m,
        CoverCase::B => binom2(m) * e + m * g,
    }
}

/// Roots in `a` of `−a(a−2)e + me(a−2) + a(2γ−2−e+me) = m((m−1)e + 2(γ−1))`, ascending.
pub fn adjunction_quadratic_roots(m: i64, e: i64, gamma: u32) -> (Rat, Rat) {
    let g = gamma as i64;
    // −e·a² + (e + 2me + 2γ − 2)·a − (2me + m(m−1)e + 2m(γ−1)) = 0
    let qa = BigInt::from(-e);
    let qb = BigInt::from(e + 2 * m * e + 2 * g - 2);
    let qc = BigInt::from(-(2 * m * e + m * (m - 1) * e + 2 * m * (g - 1)));
    let disc: BigInt = &qb * &qb - BigInt::from(4) * &qa * &qc;
    let root = disc.sqrt();
    assert_eq!(&root * &root, disc, "discriminant is a perfect square");
    let two_a = BigInt::from(2) * &qa;
    let r1 = Rat::new(-&qb + &root, two_a.clone());
    let r2 = Rat::new(-&qb - &root, two_a);
    if r1 <= r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum Recognition {
    A { m: i64 },
    B { m: i64 },
    Inconsistent,
}

/// Recovers the cover degree and case from the degree `d` and genus `g` of an image curve.
pub fn recognize_cover(d: i64, g: i64, e: i64, gamma: u32, through_vertex: bool) -> Recognition {
    let (case, offset) = if through_vertex { (CoverCase::B, 1) } else { (CoverCase::A, 0) };
    if e < 1 || (d - offset).rem_euclid(e) != 0 {
        return Recognition::Inconsistent;
    }
    let m = (d - offset) / e;
    if m < 2 || genus_formula(m, e, gamma, case) != g {
        return Recognition::Inconsistent;
    }
    match case {
        CoverCase::A => Recognition::A { m },
        CoverCase::B => Recognition::B { m },
    }
}

/// Degrees of the summands of `f_*O_B(k)` and `R¹f_*O_B(k)` for `E = O ⊕ O(e)` on P¹.
pub fn pushforward_ok(k: i64, e: i64) -> (Vec<i64>, Vec<i64>) {
    let direct = if k >= 0 { (0..=k).map(|i| i * e).collect() } else { Vec::new() };
    // (Sym^{−k−2} E)^∨ ⊗ det E^∨
    let r1 = if k <= -2 { (0..=(-k - 2)).map(|i| -i * e - e).collect() } else { Vec::new() };
    (direct, r1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionKind {
    Structure,
    Twisted,
    Tschirnhausen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingPrediction {
    pub kind: PredictionKind,
    pub m: i64,
    pub e: i64,
    pub delta: i64,
    pub gamma: u32,
    pub degrees: SplittingType,
}

fn prediction(kind: PredictionKind, m: i64, e: i64, delta: i64, gamma: u32, d: Vec<i64>) -> SplittingPrediction {
    SplittingPrediction { kind, m, e, delta, gamma, degrees: SplittingType::new(d) }
}

pub fn predict_thm_a(m: i64, e: i64, delta: i64, gamma: u32) -> SplittingPrediction {
    let mut d = vec![0];
    d.extend((1..m).map(|k| -k * e - delta));
    prediction(PredictionKind::Structure, m, e, delta, gamma, d)
}

pub fn predict_thm_b(m: i64, e: i64, delta: i64, gamma: u32) -> SplittingPrediction {
    let mut d = vec![0, -e];
    d.extend((2..m).map(|k| -k * e - delta));
    prediction(PredictionKind::Twisted, m, e, delta, gamma, d)
}

pub fn predict_tschirnhausen(m: i64, e: i64, delta: i64, gamma: u32) -> SplittingPrediction {
    let d = (0..m - 1).map(|k| -k * e - e - delta).collect();
    prediction(PredictionKind::Tschirnhausen, m, e, delta, gamma, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Guaranteed,
    Unknown,
}

/// Degree test for `H¹(O(kE + Δ)) = 0`, `k = 1..m−1`.
pub fn hypothesis_check(m: i64, e: i64, delta: i64, gamma: u32) -> HypothesisStatus {
    let bound = 2 * gamma as i64 - 1;
    if (1..m).all(|k| k * e + delta >= bound) {
        HypothesisStatus::Guaranteed
    } else {
        HypothesisStatus::Unknown
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeNumerics {
    pub r: i64,
    pub base_degree: i64,
    pub image_degree: i64,
    pub through_vertex: bool,
}

pub fn cone_numerics(m: i64, e: i64, gamma: u32, case: CoverCase) -> ConeNumerics {
    let through_vertex = case == CoverCase::B;
    ConeNumerics {
        r: e - gamma as i64 + 1,
        base_degree: e,
        image_degree: m * e + through_vertex as i64,
        through_vertex,
    }
}

/// `h¹(O_X)` read off `φ_*O_X = ⊕ O(d_i)`.
pub fn genus_from_splitting(t: &SplittingType) -> Result<i64, GeometryError> {
    if t.degrees().iter().any(|&d| d > 0) {
        return Err(GeometryError::PositiveEntry(t.to_string()));
    }
    if !t.degrees().contains(&0) {
        return Err(GeometryError::MissingZero(t.to_string()));
    }
    Ok(t.degrees().iter().filter(|&&d| d <= -2).map(|&d| -d - 1).sum())
}
