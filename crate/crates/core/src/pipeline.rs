//! End-to-end verification: compute direct images of a curve on `F_e` and compare them with
//! the predicted splitting types and genera.

use std::time::Instant;

use serde::Serialize;

use crate::birkhoff::{cohomology_dims, h0_oracle, splitting_type, BirkhoffError, SplittingType, TransitionMatrix};
use crate::funcfield::{
    closure_at_infinity, integral_closure, make_integral, point_ideal, transition_matrix, twisted_pushforward,
    FiberValue, FuncFieldError, Lattice,
};
use crate::geometry::{
    adjunction_genus, genus_formula, genus_from_splitting, predict_thm_a, predict_thm_b, CoverCase, DivisorClass,
    SurfaceModel,
};
use crate::instances::{
    base_point, chart_equations, normalize_base_point, plane_to_cox, smoothness_check, BaseValue, CoxCurve,
    InstanceError, PlaneCase, PlaneCurve, PlaneError, SingularWitness, Smoothness,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PipelineError {
    #[error("curve is singular (chart {}, base values {:?})", .0.chart, .0.base_values)]
    Singular(SingularWitness),
    #[error("direct image {0} fails the connectedness gate")]
    Disconnected(SplittingType),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
    #[error(transparent)]
    Birkhoff(#[from] BirkhoffError),
}

impl PipelineError {
    /// 1 usage, 2 invalid instance, 3 internal contract violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Singular(_) | PipelineError::Disconnected(_) => 2,
            PipelineError::Plane(PlaneError::CenterOnLine | PlaneError::DegenerateData | PlaneError::NotHomogeneous) => 1,
            PipelineError::Plane(_) => 2,
            PipelineError::Instance(_) => 1,
            PipelineError::FuncField(_) | PipelineError::Birkhoff(_) => 3,
        }
    }
}

/// The two charts' rings of functions and their gluing.
#[derive(Debug, Clone)]
pub struct DirectImage {
    pub zero: Lattice,
    pub infinity: Lattice,
    pub transition: TransitionMatrix,
    pub splitting: SplittingType,
}

pub fn direct_image(x: &CoxCurve) -> Result<DirectImage, PipelineError> {
    let eq = make_integral(&chart_equations(x).zero_w)?;
    let zero = integral_closure(&eq)?;
    let infinity = closure_at_infinity(&eq, x.e(), x.delta())?;
    let transition = transition_matrix(&zero, &infinity)?;
    let splitting = splitting_type(&transition)?;
    Ok(DirectImage { zero, infinity, transition, splitting })
}

/// Splitting type of `φ_*O_X`. Smoothness is not checked.
pub fn structure_splitting(x: &CoxCurve) -> Result<SplittingType, PipelineError> {
    Ok(direct_image(x)?.splitting)
}

/// `h⁰(O_X) = 1`: exactly one nonnegative entry, equal to zero.
pub fn connectedness_gate(t: &SplittingType) -> Result<(), PipelineError> {
    let max = t.degrees().first().copied();
    if t.nonnegative_count() == 1 && max == Some(0) {
        Ok(())
    } else {
        Err(PipelineError::Disconnected(t.clone()))
    }
}

/// Splitting type of `φ_*O_X(q₀)`, `q₀` the point of `X` on the negative section. Needs `δ = 1`.
pub fn twisted_splitting(x: &CoxCurve) -> Result<SplittingType, PipelineError> {
    let (local, _) = normalize_base_point(x)?;
    twisted_from_image(&local, &direct_image(&local)?)
}

/// Twisted splitting from an already computed direct image; the base point must be `x = 0`.
fn twisted_from_image(x: &CoxCurve, image: &DirectImage) -> Result<SplittingType, PipelineError> {
    let BaseValue::Finite(q) = base_point(x)? else { unreachable!("base point moved to zero") };
    debug_assert!(q.is_zero());
    let point = point_ideal(&image.zero, &q, &FiberValue::FiberPole)?;
    Ok(splitting_type(&twisted_pushforward(&image.zero, &image.infinity, &point)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusTriple {
    pub formula: i64,
    pub adjunction: i64,
    pub splitting: Option<i64>,
}

impl GenusTriple {
    pub fn agree(&self) -> bool {
        self.splitting == Some(self.formula) && self.formula == self.adjunction
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneInfo {
    pub case: PlaneCase,
    pub plane_degree: u32,
    pub cover_degree: usize,
    pub tangency: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub e: i64,
    pub delta: i64,
    pub gamma: u32,
    pub smoothness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_point: Option<BaseValue>,
    pub predicted: SplittingType,
    pub computed: SplittingType,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_twisted: Option<SplittingType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_twisted: Option<SplittingType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted_matches: Option<bool>,
    pub genus: GenusTriple,
    pub genus_matches: bool,
    /// Window-based `h⁰` agrees with the splitting's cohomology for the checked twists.
    pub h0_consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneInfo>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn all_match(&self) -> bool {
        self.matches && self.twisted_matches.unwrap_or(true) && self.genus_matches && self.h0_consistent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub check_smoothness: bool,
    /// Twists `k` at which `h⁰` is recomputed from the transition matrix.
    pub h0_twists: (i64, i64),
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { check_smoothness: true, h0_twists: (-1, 1) }
    }
}

pub fn genus_triple(m: usize, e: i64, delta: i64, computed: &SplittingType) -> GenusTriple {
    let case = if delta == 0 { CoverCase::A } else { CoverCase::B };
    let surface = SurfaceModel::rational(e);
    GenusTriple {
        formula: genus_formula(m as i64, e, 0, case),
        adjunction: adjunction_genus(DivisorClass::m_secant(m as i64, e, delta), &surface),
        splitting: genus_from_splitting(computed).ok(),
    }
}

pub fn verify_curve(x: &CoxCurve, opts: &VerifyOptions) -> Result<VerifyReport, PipelineError> {
    let start = Instant::now();
    let smoothness = if opts.check_smoothness {
        match smoothness_check(x) {
            Smoothness::Smooth => "smooth".to_string(),
            Smoothness::Singular(w) => return Err(PipelineError::Singular(w)),
        }
    } else {
        "unchecked".to_string()
    };
    let (m, e, delta) = (x.m(), x.e(), x.delta());
    let base = if delta == 1 { Some(base_point(x)?) } else { None };
    // the twist is glued in the chart at zero only, so the base point is moved to x = 0
    let local = if delta == 1 { normalize_base_point(x)?.0 } else { x.clone() };
    let image = direct_image(&local)?;
    connectedness_gate(&image.splitting)?;
    let predicted = predict_thm_a(m as i64, e, delta, 0).degrees;
    let computed = image.splitting.clone();
    let mut h0_consistent = true;
    for k in opts.h0_twists.0..=opts.h0_twists.1 {
        h0_consistent &= h0_oracle(&image.transition, k)? == cohomology_dims(&computed, k).0;
    }
    let (predicted_twisted, computed_twisted) = if delta == 1 {
        let p = predict_thm_b(m as i64, e, delta, 0).degrees;
        (Some(p), Some(twisted_from_image(&local, &image)?))
    } else {
        (None, None)
    };
    let twisted_matches = predicted_twisted.as_ref().map(|p| Some(p) == computed_twisted.as_ref());
    let genus = genus_triple(m, e, delta, &computed);
    Ok(VerifyReport {
        m,
        e,
        delta,
        gamma: 0,
        smoothness,
        base_point: base,
        matches: predicted == computed,
        predicted,
        computed,
        predicted_twisted,
        computed_twisted,
        twisted_matches,
        genus_matches: genus.agree(),
        genus,
        h0_consistent,
        plane: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Projects the plane curve and verifies the resulting curve on `F_1`.
pub fn verify_plane(c: &PlaneCurve, opts: &VerifyOptions) -> Result<VerifyReport, PipelineError> {
    let cover = plane_to_cox(c)?;
    let mut report = verify_curve(&cover.curve, opts)?;
    report.plane = Some(PlaneInfo {
        case: cover.case,
        plane_degree: cover.plane_degree,
        cover_degree: cover.cover_degree,
        tangency: cover.tangency,
    });
    Ok(report)
}
