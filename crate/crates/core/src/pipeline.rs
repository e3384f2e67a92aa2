//! End-to-end reductions with an audit trace.
//!
//! `reduce_theorem1` takes a degree `n >= 21` polynomial to
//! `z^n + C_6' z^(n-6) + ... + C_(n-1)' z + 1` (with `C_1' .. C_5'` zero),
//! leaving `n - 6` free coefficients; `reduce_bring` takes a quintic to
//! `z^5 + C_4' z + 1`. `verify_report` rechecks a report from the input
//! polynomial using only root finding and polynomial evaluation.

use std::fmt;

use crate::conegeom::{lemma1_subspace, lemma2_plane};
use crate::elimination::intersect_curves;
use crate::error::{Error, Result};
use crate::forms::{self, LinearSubspace};
use crate::numerics::bivariate::BiPoly;
use crate::numerics::scalar::{self, Complex};
use crate::numerics::{roots, UniPoly};
use crate::rng::{derive_seed, Sampler};
use crate::trace::TraceStage;
use crate::tschirnhaus::{
    find_c123_point, normalize_constant, random_subspace, relative_coefficients, transform,
    C1Chart, CoefficientFunctional, TschirnhausMap, MAX_ATTEMPTS,
};

pub const TRACE_VERSION: u32 = 1;
/// Smallest degree covered by the 5-coefficient reduction.
pub const THEOREM1_MIN_DEGREE: usize = 21;
/// Stage name of the last elimination of the 5-coefficient reduction.
pub const FINAL_STAGE: &str = "final-intersection";
const FINAL_DEGREE_BOUND: usize = 20;
const LEMMA1_K: usize = 5;
const FINISH_GUARD_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    /// `C_1 = ... = C_5 = 0`, degree at least 21.
    Theorem1,
    /// `C_1 = C_2 = C_3 = 0` on a quintic.
    Bring,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Theorem1 => "theorem1",
            ReductionKind::Bring => "bring",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "theorem1" => Some(ReductionKind::Theorem1),
            "bring" => Some(ReductionKind::Bring),
            _ => None,
        }
    }

    /// How many leading coefficients the reduction kills.
    pub fn vanishing_count(self) -> usize {
        match self {
            ReductionKind::Theorem1 => 5,
            ReductionKind::Bring => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace {
    pub stages: Vec<TraceStage>,
    pub final_map: TschirnhausMap,
    /// Normalized output, constant term one.
    pub final_poly: UniPoly,
    /// `c` with output roots `z_i = g(x_i) / c`.
    pub scale_factor: Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub kind: ReductionKind,
    pub seed: u64,
    pub precision_bits: u32,
    pub input: UniPoly,
    pub trace: ReductionTrace,
    /// `|C_k| / R^k` of the transformed equation for the killed
    /// coefficients, with `R` its root radius.
    pub vanished: Vec<f64>,
    /// Free coefficients `C_(v+1)', ..., C_(n-1)'` of the output.
    pub parameter_count: usize,
    /// Relative residual of each `g(x_i) / c` in the output.
    pub root_residuals: Vec<f64>,
}

fn prepare(f: &UniPoly, precision_bits: u32) -> Result<UniPoly> {
    scalar::check_precision(precision_bits)?;
    if !f.is_monic() {
        return Err(Error::InvalidInput("input polynomial must be monic".into()));
    }
    Ok(f.with_prec(precision_bits))
}

fn surface(stage: &str, last: Option<Error>) -> Error {
    Error::degenerate(
        stage,
        MAX_ATTEMPTS,
        last.map_or_else(String::new, |e| e.to_string()),
    )
}

/// The 5-coefficient reduction of a degree `n >= 21` polynomial.
///
/// 1. move the origin of map space to a point with `C_1 = C_2 = C_3 = 0`;
/// 2. intersect the tangent hyperplanes of `C_2 = 0`, `C_3 = 0` inside
///    `C_1 = 0`, an `(n-4)`-dimensional space on which both lose their
///    linear parts;
/// 3. in a random 15-dimensional subspace, find a 5-dimensional one on
///    which the quadratic parts of `C_2` and `C_3` vanish, so `C_2 = 0`
///    and `C_3` is a cubic form there;
/// 4. find a 2-plane on that cubic cone;
/// 5. intersect `C_4 = 0` and `C_5 = 0` on the plane (degree 20);
/// 6. normalize the constant term.
pub fn reduce_theorem1(f: &UniPoly, seed: u64, precision_bits: u32) -> Result<ReductionReport> {
    let f = prepare(f, precision_bits)?;
    let n = f.degree();
    if n < THEOREM1_MIN_DEGREE {
        return Err(Error::InvalidInput(format!(
            "the 5-coefficient reduction needs degree at least {THEOREM1_MIN_DEGREE}, got {n}; use the Bring reduction for quintics"
        )));
    }
    let input_roots = roots(&f, precision_bits)?.roots;
    let prec = precision_bits;
    let chart = C1Chart::new(&f)?;
    let functional = CoefficientFunctional::new(&f, n)?;

    // (1), (2)
    let mut last = None;
    let mut found = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "theorem1-origin", attempt as u64);
        match origin_and_tangent(&f, &chart, &functional, sub) {
            Ok(x) => {
                found = Some(x);
                break;
            }
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let (origin, tangent, mut stages) = found.ok_or_else(|| surface("tangent-space", last))?;
    let c_at = |w: &[Complex], k: usize| -> Complex {
        let s = scalar::add_vec(&origin, w);
        functional.eval_upto(chart.map_at(&s).t(), k).pop().unwrap()
    };
    let c2 = |w: &[Complex]| c_at(w, 2);
    let c3 = |w: &[Complex]| c_at(w, 3);

    // (3)
    let mut last = None;
    let mut found = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "theorem1-lemma1", attempt as u64);
        let mut sampler = Sampler::new(sub, prec);
        let attempt_result = random_subspace(&tangent, 3 * LEMMA1_K, &mut sampler).and_then(|v| {
            let on_v2 = |x: &[Complex]| c2(&v.embed(x));
            let on_v3 = |x: &[Complex]| c3(&v.embed(x));
            let phi2 = forms::quadratic_part(&on_v2, v.dim(), prec);
            let psi2 = forms::quadratic_part(&on_v3, v.dim(), prec);
            let (u, lemma_stages) = lemma1_subspace(&phi2, &psi2, LEMMA1_K, sub)?;
            let u = v_compose(&v, &u)?;
            Ok((v, u, lemma_stages, sub))
        });
        match attempt_result {
            Ok(x) => {
                found = Some(x);
                break;
            }
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let (v15, u5, lemma_stages, sub) = found.ok_or_else(|| surface("lemma1", last))?;
    stages.push(TraceStage::linear("restrict", 0.0, (n - 4, v15.dim()), sub));
    stages.extend(lemma_stages);

    // (4), (5)
    let on_u3 = |y: &[Complex]| c3(&u5.embed(y));

    let mut last = None;
    let mut found = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "theorem1-plane", attempt as u64);
        let attempt_result = forms::extract_forms(&on_u3, LEMMA1_K, 3, prec)
            .and_then(|parts| {
                let psi3 = parts.cubic.expect("degree-3 extraction has a cubic part");
                lemma2_plane(&psi3, sub)
            })
            .and_then(|(plane, plane_stages)| {
                let plane = v_compose(&u5, &plane)?;
                final_intersection(&f, &chart, &functional, &origin, &plane, sub)
                    .map(|(map, stage)| (plane_stages, map, stage))
            });
        match attempt_result {
            Ok(x) => {
                found = Some(x);
                break;
            }
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let (plane_stages, map, final_stage) = found.ok_or_else(|| surface(FINAL_STAGE, last))?;
    stages.extend(plane_stages);
    stages.push(final_stage);

    // (6)
    finish(
        ReductionKind::Theorem1,
        &f,
        &input_roots,
        seed,
        precision_bits,
        map,
        stages,
    )
}

/// Chart coordinates of a point with `C_1 = C_2 = C_3 = 0`, and the space
/// on which the linear parts of `C_2` and `C_3` at that point vanish.
fn origin_and_tangent(
    f: &UniPoly,
    chart: &C1Chart,
    functional: &CoefficientFunctional,
    seed: u64,
) -> Result<(Vec<Complex>, LinearSubspace, Vec<TraceStage>)> {
    let n = f.degree();
    let prec = f.prec();
    let dim = chart.dim();
    let (origin_map, mut stages) = find_c123_point(f, seed)?;
    let origin = chart.coords_of(&origin_map);
    let c_at = |w: &[Complex], k: usize| -> Complex {
        let s = scalar::add_vec(&origin, w);
        functional.eval_upto(chart.map_at(&s).t(), k).pop().unwrap()
    };
    let l2 = forms::linear_part(&|w: &[Complex]| c_at(w, 2), dim, 2, prec);
    let l3 = forms::linear_part(&|w: &[Complex]| c_at(w, 3), dim, 3, prec);
    let tangent = forms::common_null_space(&[&l2, &l3], prec)
        .filter(|t| t.dim() == dim - 2)
        .ok_or_else(|| {
            Error::degenerate(
                "tangent-space",
                1,
                "tangent hyperplanes of C2 and C3 coincide",
            )
        })?;
    let tangent = tangent.orthonormalized()?;
    let tangent_residual = tangent
        .basis()
        .iter()
        .flat_map(|b| [&l2, &l3].map(|l| scalar::ratio(&scalar::abs(&l.eval(b)), &l.scale())))
        .fold(0.0, f64::max);
    stages.push(TraceStage::linear(
        "tangent-space",
        tangent_residual,
        (n - 1, n - 4),
        seed,
    ));
    Ok((origin, tangent, stages))
}

fn v_compose(outer: &LinearSubspace, inner: &LinearSubspace) -> Result<LinearSubspace> {
    outer.compose(inner)?.orthonormalized()
}

/// Intersects `C_4 = 0` with `C_5 = 0` on `origin + plane`, returning the
/// candidate map with the largest `|C_n| / R^n`.
fn final_intersection(
    f: &UniPoly,
    chart: &C1Chart,
    functional: &CoefficientFunctional,
    origin: &[Complex],
    plane: &LinearSubspace,
    seed: u64,
) -> Result<(TschirnhausMap, TraceStage)> {
    let n = f.degree();
    let prec = f.prec();
    let map_at = |u: &Complex, v: &Complex| {
        let w = plane.embed(&[u.clone(), v.clone()]);
        chart.map_at(&scalar::add_vec(origin, &w))
    };
    let c4 = BiPoly::fit(
        |u, v| functional.eval_upto(map_at(u, v).t(), 4).pop().unwrap(),
        4,
        prec,
    )?;
    let c5 = BiPoly::fit(
        |u, v| functional.eval_upto(map_at(u, v).t(), 5).pop().unwrap(),
        5,
        prec,
    )?;
    let hit = intersect_curves(FINAL_STAGE, &c4, &c5, prec)?;
    let tol = scalar::tolerance(prec).to_f64();
    let mut best: Option<(f64, TschirnhausMap, f64)> = None;
    for point in hit.points.iter().filter(|p| p.residual <= tol) {
        let map = map_at(&point.u, &point.v);
        let rel = relative_coefficients(&functional.eval_upto(map.t(), n), n);
        let vanish = rel[..5].iter().cloned().fold(0.0, f64::max);
        if vanish > tol {
            continue;
        }
        // strict comparison keeps the earliest root on ties
        if best
            .as_ref()
            .is_none_or(|(score, _, _)| rel[n - 1] > *score)
        {
            best = Some((rel[n - 1], map, vanish.max(point.residual)));
        }
    }
    let (score, map, residual) =
        best.ok_or_else(|| Error::DegenerateSection("no intersection point kills C1..C5".into()))?;
    if score <= tol {
        return Err(Error::ZeroConstant);
    }
    let stage = TraceStage::auxiliary(
        FINAL_STAGE,
        FINAL_DEGREE_BOUND,
        residual.max(hit.auxiliary.residual),
        seed,
    );
    Ok((map, stage))
}

/// Bring–Jerrard form `z^5 + C_4' z + 1` of a quintic.
pub fn reduce_bring(f: &UniPoly, seed: u64, precision_bits: u32) -> Result<ReductionReport> {
    let f = prepare(f, precision_bits)?;
    if f.degree() != 5 {
        return Err(Error::InvalidInput(format!(
            "the Bring reduction needs a quintic, got degree {}",
            f.degree()
        )));
    }
    let input_roots = roots(&f, precision_bits)?.roots;
    let (map, stages) = find_c123_point(&f, seed)?;
    finish(
        ReductionKind::Bring,
        &f,
        &input_roots,
        seed,
        precision_bits,
        map,
        stages,
    )
}

fn finish(
    kind: ReductionKind,
    f: &UniPoly,
    input_roots: &[Complex],
    seed: u64,
    precision_bits: u32,
    map: TschirnhausMap,
    stages: Vec<TraceStage>,
) -> Result<ReductionReport> {
    let n = f.degree();
    // the output is assembled with guard bits and rounded once at the end
    let work = precision_bits + FINISH_GUARD_BITS;
    let wide_map = TschirnhausMap::new(
        n,
        map.t().iter().map(|z| scalar::to_prec(z, work)).collect(),
    )?;
    let wide_roots: Vec<Complex> = input_roots
        .iter()
        .map(|z| scalar::to_prec(z, work))
        .collect();
    let wide_roots = polish_roots(&f.with_prec(work), &wide_roots);
    let te = transform(&f.with_prec(work), &wide_map)?;
    let vanished = relative_coefficients(&te.c, kind.vanishing_count());
    let (wide_poly, wide_factor) = normalize_constant(&te.result)?;
    let final_poly = wide_poly.with_prec(precision_bits);
    let scale_factor = scalar::to_prec(&wide_factor, precision_bits);
    let root_residuals = mapped_roots(&wide_roots, &wide_map, &wide_factor)
        .iter()
        .map(|z| relative_residual(&final_poly.with_prec(work), z))
        .collect();
    Ok(ReductionReport {
        kind,
        seed,
        precision_bits,
        input: f.clone(),
        trace: ReductionTrace {
            stages,
            final_map: map,
            final_poly,
            scale_factor,
        },
        vanished,
        parameter_count: n - 1 - kind.vanishing_count(),
        root_residuals,
    })
}

/// A few Newton steps on each root at the (higher) working precision of `f`.
fn polish_roots(f: &UniPoly, xs: &[Complex]) -> Vec<Complex> {
    xs.iter()
        .map(|x| {
            let mut x = x.clone();
            for _ in 0..3 {
                let (p, dp) = f.eval_with_derivative(&x);
                if dp.is_zero() {
                    break;
                }
                x -= Complex::with_val(f.prec(), p / dp);
            }
            x
        })
        .collect()
}

fn mapped_roots(input_roots: &[Complex], map: &TschirnhausMap, c: &Complex) -> Vec<Complex> {
    let g = map.polynomial();
    input_roots
        .iter()
        .map(|x| Complex::with_val(c.prec(), g.eval(x) / c))
        .collect()
}

/// `|p(z)| / sum |p_i| |z|^i`.
pub fn relative_residual(p: &UniPoly, z: &Complex) -> f64 {
    scalar::ratio(&scalar::abs(&p.eval(z)), &p.eval_abs(z))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{mark}  {:<18} {:>12.3e}  (<= {:.3e})",
                c.name, c.value, c.threshold
            )?;
        }
        write!(f, "{}", if self.pass() { "PASS" } else { "FAIL" })
    }
}

fn check(name: &'static str, value: f64, threshold: f64) -> Check {
    Check {
        name,
        value,
        threshold,
        pass: value.is_finite() && value <= threshold,
    }
}

/// Independent recheck of a report. `tolerance` defaults to
/// `2^(-precision_bits/2)`; nothing here panics or errors on a corrupt
/// report, every problem becomes a failed check.
pub fn verify_report(report: &ReductionReport, tolerance: Option<f64>) -> Verdict {
    let prec = report.precision_bits.max(scalar::MIN_PRECISION);
    let tol = tolerance.unwrap_or_else(|| scalar::tolerance(prec).to_f64());
    let p = &report.trace.final_poly;
    let n = report.input.degree();
    let vcount = report.kind.vanishing_count();
    let mut checks = Vec::new();

    // constant term and leading coefficient exactly one, up to rounding
    let unit_tol = scalar::pow2(prec, 4 - prec as i32).to_f64();
    let shape_ok = p.degree() == n && n > vcount;
    let off_one = |z: &Complex| scalar::abs(&Complex::with_val(prec, z - 1u32)).to_f64();
    let normalization = if shape_ok {
        off_one(p.coeff(0)).max(off_one(p.leading()))
    } else {
        f64::INFINITY
    };
    checks.push(check("normalization", normalization, unit_tol));

    // killed coefficients, recomputed from the output and as reported
    let vanishing = if shape_ok {
        let scale = p.scale();
        (1..=vcount)
            .map(|k| scalar::ratio(&scalar::abs(p.coeff(n - k)), &scale))
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    checks.push(check("vanishing", vanishing, tol));
    let reported = if report.vanished.len() == vcount {
        report.vanished.iter().cloned().fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    checks.push(check("reported-vanishing", reported, tol));

    checks.push(check(
        "degree-ledger",
        if degree_ledger_ok(report) { 0.0 } else { 1.0 },
        0.0,
    ));
    let stage_worst = report
        .trace
        .stages
        .iter()
        .map(|s| s.residual)
        .fold(0.0, f64::max);
    checks.push(check("stage-residuals", stage_worst, tol));
    let expected = n.saturating_sub(1 + vcount);
    let count_gap = if report.parameter_count == expected {
        0.0
    } else {
        1.0
    };
    checks.push(check("parameter-count", count_gap, 0.0));

    // roots of the input, mapped and substituted
    let (substitution, bijection) =
        root_checks(report, prec).unwrap_or((f64::INFINITY, f64::INFINITY));
    checks.push(check("root-substitution", substitution, tol));
    checks.push(check(
        "root-bijection",
        bijection,
        scalar::pow2(prec, -((prec / 4) as i32)).to_f64(),
    ));
    Verdict { checks }
}

fn degree_ledger_ok(report: &ReductionReport) -> bool {
    let stages = &report.trace.stages;
    let degrees: Vec<(&str, usize)> = stages
        .iter()
        .filter_map(|s| s.auxiliary_degree.map(|d| (s.name.as_str(), d)))
        .collect();
    match report.kind {
        ReductionKind::Bring => degrees
            .iter()
            .all(|&(name, d)| name != FINAL_STAGE && (d == 2 || d == 3)),
        ReductionKind::Theorem1 => {
            let Some((&(last_name, last_degree), before)) = degrees.split_last() else {
                return false;
            };
            last_name == FINAL_STAGE
                && last_degree <= FINAL_DEGREE_BOUND
                && before
                    .iter()
                    .all(|&(name, d)| name != FINAL_STAGE && matches!(d, 2 | 3 | 4 | 6))
        }
    }
}

/// Worst substitution residual, and worst distance (relative to
/// `max(1, |z|)`) in a nearest-neighbour matching of mapped input roots to
/// the output's own roots.
fn root_checks(report: &ReductionReport, prec: u32) -> Option<(f64, f64)> {
    let p = report.trace.final_poly.with_prec(prec);
    let f = report.input.with_prec(prec);
    if !f.is_monic()
        || report.trace.final_map.n() != f.degree()
        || report.trace.scale_factor.is_zero()
    {
        return None;
    }
    let xs = roots(&f, prec).ok()?.roots;
    let zs = mapped_roots(&xs, &report.trace.final_map, &report.trace.scale_factor);
    let substitution = zs
        .iter()
        .map(|z| relative_residual(&p, z))
        .fold(0.0, f64::max);

    let mut outputs = roots(&p, prec).ok()?.roots;
    let mut bijection = 0.0f64;
    for z in &zs {
        let (idx, dist) = outputs
            .iter()
            .map(|w| scalar::abs(&Complex::with_val(prec, z - w)))
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))?;
        let size = scalar::abs(z).to_f64().max(1.0);
        bijection = bijection.max(dist.to_f64() / size);
        outputs.swap_remove(idx);
    }
    Some((substitution, bijection))
}
