//! The acceptance matrix: seeded random instances, fixed golden files, and the algebraic
//! identity checks, each reported as one row.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use tschirn_core::arith::{BiPoly, Rat, UniPoly};
use tschirn_core::birkhoff::{
    cohomology_dims, factorize, h0_oracle, random_unimodular, splitting_type, SplittingType, TransitionMatrix,
};
use tschirn_core::funcfield::{integral_closure, make_integral, maximize, Lattice};
use tschirn_core::geometry::{
    adjunction_quadratic_roots, canonical_class, genus_formula, intersect, pushforward_ok, recognize_cover,
    CoverCase, DivisorClass, Recognition, SurfaceModel,
};
use tschirn_core::instances::{
    derive_seed, random_instance, random_plane_curve, CoxCurve, PlaneCase, PlaneCurve, PlaneError,
};
use tschirn_core::pipeline::{direct_image, verify_curve, verify_plane, PipelineError, VerifyOptions, VerifyReport};
use tschirn_core::polymat::{LaurentMatrix, Matrix};

use crate::commands::{self, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Smoke,
    Full,
}

impl Scale {
    /// Reads `TSCHIRN_SUITE_SCALE`, defaulting to `full`.
    pub fn from_env() -> Scale {
        match std::env::var("TSCHIRN_SUITE_SCALE").as_deref() {
            Ok("smoke") => Scale::Smoke,
            _ => Scale::Full,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub scale: Scale,
    /// Restricts the random matrix to one value of `δ`.
    pub delta: Option<i64>,
    pub seed: u64,
    pub bound: i64,
    pub jobs: usize,
    pub golden_dir: PathBuf,
    /// Per-instance budget.
    pub timeout_ms: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            scale: Scale::from_env(),
            delta: None,
            seed: 2024,
            bound: 5,
            jobs: 0,
            golden_dir: default_golden_dir(),
            timeout_ms: 5000,
        }
    }
}

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl Row {
    fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>, start: Instant) -> Row {
        Row { id: id.into(), pass, detail: detail.into(), elapsed_ms: start.elapsed().as_millis() }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {} ({} ms)", if self.pass { "PASS" } else { "FAIL" }, self.id, self.detail, self.elapsed_ms)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scale: Scale,
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// One seeded instance of the random matrix and its verification.
#[derive(Debug, Clone)]
pub struct MatrixEntry {
    pub m: usize,
    pub e: i64,
    pub delta: i64,
    pub index: u64,
    pub seed: u64,
    pub curve: Option<CoxCurve>,
    pub report: Result<VerifyReport, String>,
    pub elapsed_ms: u128,
}

impl MatrixEntry {
    fn label(&self) -> String {
        format!("(m={}, e={}, delta={}, #{})", self.m, self.e, self.delta, self.index)
    }
}

pub fn matrix_grid(scale: Scale) -> (Vec<usize>, Vec<i64>, u64) {
    match scale {
        Scale::Smoke => (vec![2, 3], vec![1, 2], 1),
        Scale::Full => (vec![2, 3, 4, 5], vec![1, 2, 3], 3),
    }
}

/// Generates and verifies the seeded instances for one value of `δ`, in input order.
pub fn run_matrix(cfg: &SuiteConfig, delta: i64) -> Vec<MatrixEntry> {
    let (ms, es, per) = matrix_grid(cfg.scale);
    let mut jobs = Vec::new();
    for &m in &ms {
        for &e in &es {
            for index in 0..per {
                jobs.push((m, e, index));
            }
        }
    }
    let run = |&(m, e, index): &(usize, i64, u64)| {
        let start = Instant::now();
        let seed = derive_seed(cfg.seed, &[m as i64, e, delta], index);
        let (curve, report) = match random_instance(m, e, delta, seed, cfg.bound) {
            Ok(g) => {
                let r = verify_curve(&g.curve, &VerifyOptions::default()).map_err(|err| err.to_string());
                (Some(g.curve), r)
            }
            Err(err) => (None, Err(err.to_string())),
        };
        MatrixEntry { m, e, delta, index, seed, curve, report, elapsed_ms: start.elapsed().as_millis() }
    };
    pool(cfg.jobs).install(|| jobs.par_iter().map(run).collect())
}

fn check_entries(
    id: &str,
    entries: &[MatrixEntry],
    start: Instant,
    cfg: &SuiteConfig,
    check: impl Fn(&MatrixEntry, &VerifyReport) -> Result<(), String>,
) -> Row {
    if entries.is_empty() {
        return Row::new(id, true, "no instances selected", start);
    }
    let mut failures = Vec::new();
    for entry in entries {
        match &entry.report {
            Err(err) => failures.push(format!("{}: {err}", entry.label())),
            Ok(r) => {
                if let Err(msg) = check(entry, r) {
                    failures.push(format!("{}: {msg}", entry.label()));
                }
            }
        }
        if entry.elapsed_ms > cfg.timeout_ms as u128 {
            failures.push(format!("{}: took {} ms", entry.label(), entry.elapsed_ms));
        }
    }
    let total: u128 = entries.iter().map(|e| e.elapsed_ms).sum();
    if total > 300_000 {
        failures.push(format!("total instance time {total} ms"));
    }
    if failures.is_empty() {
        Row::new(id, true, format!("{} instances, instance time {total} ms", entries.len()), start)
    } else {
        Row::new(id, false, failures.join("; "), start)
    }
}

fn expect_eq(what: &str, got: &SplittingType, want: Vec<i64>) -> Result<(), String> {
    let want = SplittingType::new(want);
    if *got == want {
        Ok(())
    } else {
        Err(format!("{what} {got}, expected {want}"))
    }
}

/// `{0, −e, …, −(m−1)e}`.
pub fn structure_avoiding_vertex(entries: &[MatrixEntry], cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let sel: Vec<_> = entries.iter().filter(|e| e.delta == 0).cloned().collect();
    check_entries("1 structure splitting, delta=0", &sel, start, cfg, |en, r| {
        expect_eq("splitting", &r.computed, (0..en.m as i64).map(|k| -k * en.e).collect())
    })
}

/// `{0} ∪ {−ke−1 : k = 1..m−1}`.
pub fn structure_through_vertex(entries: &[MatrixEntry], cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let sel: Vec<_> = entries.iter().filter(|e| e.delta == 1).cloned().collect();
    check_entries("2 structure splitting, delta=1", &sel, start, cfg, |en, r| {
        let mut want = vec![0];
        want.extend((1..en.m as i64).map(|k| -k * en.e - 1));
        expect_eq("splitting", &r.computed, want)
    })
}

/// `{0, −e} ∪ {−ke−1 : k = 2..m−1}`.
pub fn twisted_through_vertex(entries: &[MatrixEntry], cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let sel: Vec<_> = entries.iter().filter(|e| e.delta == 1).cloned().collect();
    check_entries("3 twisted splitting, delta=1", &sel, start, cfg, |en, r| {
        let mut want = vec![0, -en.e];
        want.extend((2..en.m as i64).map(|k| -k * en.e - 1));
        match &r.computed_twisted {
            Some(t) => expect_eq("twisted", t, want),
            None => Err("twisted splitting missing".into()),
        }
    })
}

/// Genus from the splitting, from adjunction, and from the closed formula.
pub fn genus_agreement(entries: &[MatrixEntry], cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    check_entries("4 genus triple agreement", entries, start, cfg, |en, r| {
        let m = en.m as i64;
        let closed = m * (m - 1) / 2 * en.e + if en.delta == 0 { 1 - m } else { 0 };
        let g = r.genus;
        if g.splitting == Some(closed) && g.adjunction == closed && g.formula == closed {
            Ok(())
        } else {
            Err(format!("genus {g:?}, closed form {closed}"))
        }
    })
}

/// Random smooth plane curves of degrees 3, 4, 5 in both cases, plus the flex rejection.
pub fn plane_pipeline(cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let per = match cfg.scale {
        Scale::Smoke => 1,
        Scale::Full => 3,
    };
    let jobs: Vec<(u32, PlaneCase)> =
        (3..=5).flat_map(|m| [(m, PlaneCase::A), (m, PlaneCase::B)]).collect();
    let results: Vec<Result<(usize, usize, usize), String>> = pool(cfg.jobs).install(|| {
        jobs.par_iter()
            .map(|&(m, case)| {
                let tag = [m as i64, matches!(case, PlaneCase::B) as i64];
                let (mut accepted, mut inflections, mut singular) = (0, 0, 0);
                for i in 0..200u64 {
                    if accepted == per {
                        break;
                    }
                    let c = random_plane_curve(m, case, derive_seed(cfg.seed, &tag, i), cfg.bound.min(3));
                    match verify_plane(&c, &VerifyOptions::default()) {
                        Ok(r) => {
                            check_plane(m as i64, case, &r)?;
                            accepted += 1;
                        }
                        Err(PipelineError::Plane(PlaneError::Inflection(_))) => inflections += 1,
                        Err(PipelineError::Singular(_)) => singular += 1,
                        Err(e) => return Err(format!("degree {m} {case:?}: {e}")),
                    }
                }
                if accepted < per {
                    return Err(format!("degree {m} {case:?}: only {accepted} smooth samples"));
                }
                Ok((accepted, inflections, singular))
            })
            .collect()
    });
    let mut failures: Vec<String> = results.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    let (acc, infl, sing) = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    // a flex of y²z = x³ + xz² must be refused before any prediction
    match verify_plane(&flex_cubic(), &VerifyOptions::default()) {
        Err(e @ PipelineError::Plane(PlaneError::Inflection(3))) if e.exit_code() == commands::EXIT_INVALID => {}
        other => failures.push(format!("flex cubic not rejected: {other:?}")),
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("{acc} curves verified, {infl} inflectionary and {sing} singular samples rejected, flex refused")
    } else {
        failures.join("; ")
    };
    Row::new("5 plane-curve projections", pass, detail, start)
}

fn check_plane(m: i64, case: PlaneCase, r: &VerifyReport) -> Result<(), String> {
    let (want, twisted): (Vec<i64>, Option<Vec<i64>>) = match case {
        PlaneCase::A => ((0..m).map(|k| -k).collect(), None),
        PlaneCase::B => {
            let mut s = vec![0];
            s.extend(2..m);
            let mut t = vec![0, 1];
            t.extend(3..m);
            (s.iter().map(|d| -d).collect(), Some(t.iter().map(|d| -d).collect()))
        }
    };
    expect_eq(&format!("degree {m} {case:?} splitting"), &r.computed, want)?;
    if let Some(t) = twisted {
        match &r.computed_twisted {
            Some(got) => expect_eq(&format!("degree {m} twisted"), got, t)?,
            None => return Err("twisted splitting missing".into()),
        }
    }
    Ok(())
}

pub fn flex_cubic() -> PlaneCurve {
    let g = tschirn_core::instances::Form3::from_terms([
        ([0, 2, 1], Rat::one()),
        ([3, 0, 0], Rat::from(-1)),
        ([1, 0, 2], Rat::from(-1)),
    ]);
    PlaneCurve::new(g, [Rat::zero(), Rat::one(), Rat::zero()], [Rat::zero(), Rat::one(), Rat::zero()])
        .expect("valid center")
}

/// One random `U·D·V` and the four properties checked on it.
fn birkhoff_case(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(2..=5);
    let exps: Vec<i64> = (0..m).map(|_| rng.gen_range(-6..=6)).collect();
    let steps = 2 * m;
    let u = random_unimodular(&mut rng, m, steps, 2).to_laurent();
    let v = random_unimodular(&mut rng, m, steps, 2).to_laurent_inverse();
    let d: LaurentMatrix = Matrix::diagonal(exps.iter().map(|&k| tschirn_core::arith::LaurentPoly::x_pow(k)).collect());
    let t = TransitionMatrix::new(&(&u * &d) * &v).map_err(|e| e.to_string())?;
    let planted = SplittingType::new(exps.clone());
    let f = factorize(&t).map_err(|e| e.to_string())?;
    if f.reconstruct() != *t.matrix() {
        return Err(format!("seed {seed}: refactorization differs"));
    }
    if f.splitting_type() != planted {
        return Err(format!("seed {seed}: type {} planted {planted}", f.splitting_type()));
    }
    let (_, det_exp) = t.determinant();
    if planted.total_degree() != det_exp {
        return Err(format!("seed {seed}: degree sum {} det exponent {det_exp}", planted.total_degree()));
    }
    let u2 = random_unimodular(&mut rng, m, steps, 1).to_laurent();
    let v2 = random_unimodular(&mut rng, m, steps, 1).to_laurent_inverse();
    let t2 = TransitionMatrix::new(&(&u2 * t.matrix()) * &v2).map_err(|e| e.to_string())?;
    if splitting_type(&t2).map_err(|e| e.to_string())? != planted {
        return Err(format!("seed {seed}: type changed under perturbation"));
    }
    for k in -3..=3 {
        let h0 = h0_oracle(&t, k).map_err(|e| e.to_string())?;
        // h⁰(O(d + k)) = max(d + k + 1, 0), summed
        let direct: u64 = exps.iter().map(|&d| (d + k + 1).max(0) as u64).sum();
        if h0 != direct || h0 != cohomology_dims(&planted, k).0 {
            return Err(format!("seed {seed}: h0 at k = {k} is {h0}, expected {direct}"));
        }
    }
    Ok(())
}

pub fn birkhoff_properties(cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let count = match cfg.scale {
        Scale::Smoke => 40,
        Scale::Full => 200,
    };
    let seeds: Vec<u64> = (0..count).map(|i| derive_seed(cfg.seed, &[6], i)).collect();
    let failures: Vec<String> =
        pool(cfg.jobs).install(|| seeds.par_iter().filter_map(|&s| birkhoff_case(s).err()).collect());
    let elapsed = start.elapsed().as_millis();
    let pass = failures.is_empty() && elapsed < 120_000;
    let detail = if failures.is_empty() {
        format!("{count} random U*D*V products, k in [-3, 3]")
    } else {
        failures.join("; ")
    };
    Row::new("6 birkhoff factorization properties", pass, detail, start)
}

pub fn calculus() -> Row {
    let start = Instant::now();
    let mut failures = Vec::new();
    for e in 1..=8 {
        let s = SurfaceModel::rational(e);
        let h = DivisorClass::h(e);
        let y0 = DivisorClass::Y0;
        if intersect(h, h, &s) != e || intersect(y0, h, &s) != 0 || intersect(y0, y0, &s) != -e {
            failures.push(format!("intersection numbers at e = {e}"));
        }
    }
    for m in 2..=6i64 {
        for e in 1..=8i64 {
            for gamma in 0..=4u32 {
                let (lo, hi) = adjunction_quadratic_roots(m, e, gamma);
                let other = Rat::from(m + 1) + Rat::new(2 * (gamma as i64 - 1), e);
                let mut want = [Rat::from(m), other];
                want.sort();
                if [lo.clone(), hi.clone()] != want {
                    failures.push(format!("roots at m = {m}, e = {e}, gamma = {gamma}: {lo}, {hi}"));
                }
            }
        }
    }
    let mut recognized = 0;
    for m in 2..=8i64 {
        for e in 1..=8i64 {
            for gamma in 0..=4u32 {
                for (case, offset) in [(CoverCase::A, 0), (CoverCase::B, 1)] {
                    let g = genus_formula(m, e, gamma, case);
                    let want = match case {
                        CoverCase::A => Recognition::A { m },
                        CoverCase::B => Recognition::B { m },
                    };
                    let got = recognize_cover(m * e + offset, g, e, gamma, case == CoverCase::B);
                    if got != want {
                        failures.push(format!("recognize_cover at m = {m}, e = {e}, gamma = {gamma}: {got:?}"));
                    }
                    recognized += 1;
                }
            }
        }
    }
    let pass = failures.is_empty();
    let detail = if pass { format!("e in [1, 8], {recognized} recognitions") } else { failures.join("; ") };
    Row::new("7 intersection and adjunction calculus", pass, detail, start)
}

pub fn pushforward_tables() -> Row {
    let start = Instant::now();
    let mut failures = Vec::new();
    for e in 1..=5i64 {
        let s = SurfaceModel::rational(e);
        let k_class = canonical_class(&s);
        for k in -6..=6i64 {
            let (direct, r1) = pushforward_ok(k, e);
            let want_direct: Vec<i64> = if k < 0 { vec![] } else { (0..=k).map(|i| i * e).collect() };
            // zero unless k ≤ −2
            let want_r1: Vec<i64> = if k > -2 { vec![] } else { (0..=(-k - 2)).map(|i| -(i + 1) * e).collect() };
            if direct != want_direct || r1 != want_r1 {
                failures.push(format!("k = {k}, e = {e}: {direct:?} / {r1:?}"));
                continue;
            }
            // χ(kH + nF) on the surface by Riemann–Roch against the base-curve Euler characteristics
            for n in -4..=4i64 {
                let d = DivisorClass::new(k, k * e + n);
                let rr = 1 + (intersect(d, d, &s) - intersect(d, k_class, &s)) / 2;
                let chi: i64 =
                    direct.iter().map(|&a| a + n + 1).sum::<i64>() - r1.iter().map(|&a| a + n + 1).sum::<i64>();
                if rr != chi {
                    failures.push(format!("euler characteristic at k = {k}, n = {n}, e = {e}: {rr} vs {chi}"));
                }
            }
        }
    }
    let pass = failures.is_empty();
    let detail = if pass { "k in [-6, 6], e in [1, 5], Riemann-Roch consistent".to_string() } else { failures.join("; ") };
    Row::new("8 direct image tables", pass, detail, start)
}

pub fn nodal_instance() -> CoxCurve {
    // w² = x²(x + 1)(x + 2) on F_2
    let c = [&[0, 0, -2, -3, -1][..], &[], &[1]];
    CoxCurve::new(2, 2, 0, c.iter().map(|v| UniPoly::from_ints(v)).collect()).expect("valid")
}

pub fn reducible_instance() -> CoxCurve {
    // (w − x)(w + x + 1): two sections of F_1
    let c = [&[0, -1, -1][..], &[1], &[1]];
    CoxCurve::new(2, 1, 0, c.iter().map(|v| UniPoly::from_ints(v)).collect()).expect("valid")
}

pub fn negative_controls() -> Row {
    let start = Instant::now();
    let mut failures = Vec::new();
    let out = commands::verify_instance(&nodal_instance(), &VerifyOptions::default());
    let witness = out.value.pointer("/witness/base_values").cloned();
    if out.exit_code != commands::EXIT_INVALID || witness != Some(serde_json::json!(["0/1"])) {
        failures.push(format!("nodal: exit {} witness {witness:?}", out.exit_code));
    }
    let opts = VerifyOptions { check_smoothness: false, ..Default::default() };
    let out = commands::verify_instance(&reducible_instance(), &opts);
    let splitting: Option<Vec<i64>> =
        out.value.get("splitting").and_then(|v| serde_json::from_value(v.clone()).ok());
    let nonneg = splitting.as_ref().map(|s| s.iter().filter(|&&d| d >= 0).count());
    if out.exit_code != commands::EXIT_INVALID || out.value["error"] != "disconnected" || nonneg != Some(2) {
        failures.push(format!("reducible: exit {} {:?}", out.exit_code, out.value));
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("node at x = 0 rejected (exit 2); reducible member gated with splitting {:?}", splitting.unwrap())
    } else {
        failures.join("; ")
    };
    Row::new("9 negative controls", pass, detail, start)
}

fn bi(coeffs: &[&[i64]]) -> BiPoly {
    BiPoly::from_fiber_coeffs(&coeffs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
}

fn closure_checks(l: &Lattice) -> Result<(), String> {
    if !l.is_multiplicatively_closed() {
        return Err("not multiplicatively closed".into());
    }
    match maximize(l.clone()) {
        Ok(again) if again == *l => Ok(()),
        Ok(_) => Err("closure not idempotent".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// The worked closures, and idempotence and closure under products on every corpus curve.
pub fn normalization(entries: &[MatrixEntry], cfg: &SuiteConfig) -> Row {
    let start = Instant::now();
    let mut failures = Vec::new();
    let quad = make_integral(&bi(&[&[2, 0, -1], &[], &[1]])).and_then(|eq| integral_closure(&eq));
    match &quad {
        Ok(l) if l.is_power_basis() => {}
        other => failures.push(format!("eta^2 - (x^2 - 2): {other:?}")),
    }
    let node = make_integral(&bi(&[&[0, 0, -1, -1], &[], &[1]])).and_then(|eq| integral_closure(&eq));
    match &node {
        Ok(l) => {
            let want = tschirn_core::polymat::PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[], &[1]]]);
            if l.basis() != &want || l.denom() != &UniPoly::x() {
                failures.push(format!("eta^2 - x^2(x+1): basis {:?} / {}", l.basis(), l.denom()));
            }
            if let Err(e) = closure_checks(l) {
                failures.push(format!("eta^2 - x^2(x+1): {e}"));
            }
        }
        Err(e) => failures.push(format!("eta^2 - x^2(x+1): {e}")),
    }
    let mut curves: Vec<CoxCurve> = entries.iter().filter_map(|e| e.curve.clone()).collect();
    curves.push(nodal_instance());
    for g in load_golden(&cfg.golden_dir).into_iter().flatten() {
        if let Some(c) = g.curve() {
            curves.push(c);
        }
    }
    let results: Vec<Option<String>> = pool(cfg.jobs).install(|| {
        curves
            .par_iter()
            .map(|c| match direct_image(c) {
                Ok(img) => closure_checks(&img.zero).and_then(|_| closure_checks(&img.infinity)).err(),
                // a singular corpus member still has a closure; only the splitting may be off
                Err(PipelineError::Birkhoff(_)) => None,
                Err(e) => Some(e.to_string()),
            })
            .collect()
    });
    failures.extend(results.into_iter().flatten());
    let pass = failures.is_empty();
    let detail = if pass { format!("worked examples exact, {} corpus curves closed and idempotent", curves.len()) } else { failures.join("; ") };
    Row::new("10 normalization identities", pass, detail, start)
}

/// A checked-in instance with the fields its output must reproduce.
#[derive(Debug, Clone, serde::Deserialize)]
pub struct GoldenCase {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub skip_smoothness: bool,
    pub instance: Value,
    /// `exit_code` plus JSON pointers into the output document.
    pub expect: serde_json::Map<String, Value>,
}

impl GoldenCase {
    pub fn curve(&self) -> Option<CoxCurve> {
        (self.kind == "curve").then(|| serde_json::from_value(self.instance.clone()).ok()).flatten()
    }

    pub fn run(&self) -> Outcome {
        let opts = VerifyOptions { check_smoothness: !self.skip_smoothness, ..Default::default() };
        match self.kind.as_str() {
            "curve" => match serde_json::from_value::<CoxCurve>(self.instance.clone()) {
                Ok(c) => commands::verify_instance(&c, &opts),
                Err(e) => Outcome::usage(e.to_string()),
            },
            "plane" => match PlaneCurve::from_json(&self.instance.to_string()) {
                Ok(c) => commands::verify_plane_curve(&c, &opts),
                Err(e) => Outcome::usage(e.to_string()),
            },
            other => Outcome::usage(format!("unknown kind {other}")),
        }
    }

    pub fn check(&self, out: &Outcome) -> Result<(), String> {
        for (key, want) in &self.expect {
            let got = if key == "exit_code" { Some(Value::from(out.exit_code)) } else { out.value.pointer(key).cloned() };
            if got.as_ref() != Some(want) {
                return Err(format!("{key}: got {}, expected {want}", got.unwrap_or(Value::Null)));
            }
        }
        Ok(())
    }
}

/// Parses every `*.json` file in `dir`, sorted by name.
pub fn load_golden(dir: &Path) -> Vec<Result<GoldenCase, String>> {
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect(),
        Err(e) => return vec![Err(format!("{}: {e}", dir.display()))],
    };
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))
        })
        .collect()
}

pub fn golden_rows(cfg: &SuiteConfig) -> Vec<Row> {
    let cases = load_golden(&cfg.golden_dir);
    pool(cfg.jobs).install(|| {
        cases
            .par_iter()
            .map(|case| {
                let start = Instant::now();
                match case {
                    Err(e) => Row::new("golden (unreadable)", false, e.clone(), start),
                    Ok(g) => {
                        let out = g.run();
                        let res = g.check(&out);
                        let id = format!("golden {}", g.name);
                        match res {
                            Ok(()) => Row::new(id, true, format!("exit {}", out.exit_code), start),
                            Err(msg) => Row::new(id, false, msg, start),
                        }
                    }
                }
            })
            .collect()
    })
}

/// All ten criteria followed by the golden rows.
pub fn run_suite(cfg: &SuiteConfig) -> Summary {
    let mut entries = Vec::new();
    for delta in [0, 1] {
        if cfg.delta.is_none_or(|d| d == delta) {
            entries.extend(run_matrix(cfg, delta));
        }
    }
    let mut rows = Vec::new();
    if cfg.delta != Some(1) {
        rows.push(structure_avoiding_vertex(&entries, cfg));
    }
    if cfg.delta != Some(0) {
        rows.push(structure_through_vertex(&entries, cfg));
        rows.push(twisted_through_vertex(&entries, cfg));
    }
    rows.push(genus_agreement(&entries, cfg));
    rows.push(plane_pipeline(cfg));
    rows.push(birkhoff_properties(cfg));
    rows.push(calculus());
    rows.push(pushforward_tables());
    rows.push(negative_controls());
    rows.push(normalization(&entries, cfg));
    rows.extend(golden_rows(cfg));
    let passed = rows.iter().filter(|r| r.pass).count();
    let failed = rows.len() - passed;
    Summary { scale: cfg.scale, rows, passed, failed, all_pass: failed == 0 }
}
