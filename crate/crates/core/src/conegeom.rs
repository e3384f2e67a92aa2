//! Linear spaces on cones: common isotropic `k`-planes of two quadratic
//! cones in `3k` variables, and 2-planes on a cubic cone in 5 variables.
//!
//! Every "take a generic plane" step draws a seeded random affine chart;
//! intersections are computed in that chart over the complex numbers and a
//! chart that meets the configuration badly is redrawn.

use rug::ops::Pow;

use crate::elimination::{intersect_curves, CurvePoint};
use crate::error::{Error, Result};
use crate::forms::{self, CubicForm, LinearForm, LinearSubspace, QuadraticForm, Restrict};
use crate::numerics::bivariate::{fit_univariate, BiPoly};
use crate::numerics::linalg;
use crate::numerics::scalar::{self, Complex, Float};
use crate::rng::{derive_seed, Sampler};
use crate::trace::{solve_auxiliary, TraceStage};
use crate::tschirnhaus::MAX_ATTEMPTS;

fn prec_of_quadratic(q: &QuadraticForm) -> u32 {
    q.entry(0, 0).prec().0
}

fn normalized(v: Vec<Complex>) -> Vec<Complex> {
    let n = scalar::norm(&v);
    v.into_iter()
        .map(|z| Complex::with_val(z.prec(), z / &n))
        .collect()
}

/// `Q(b + u d1 + v d2)` as a conic in the chart coordinates `(u, v)`.
fn conic_in_chart(q: &QuadraticForm, b: &[Complex], d1: &[Complex], d2: &[Complex]) -> BiPoly {
    let prec = prec_of_quadratic(q);
    let two = |z: Complex| Complex::with_val(prec, z * 2u32);
    let mut c = vec![vec![scalar::zero(prec); 3]; 3];
    c[0][0] = q.eval(b);
    c[1][0] = two(q.bilinear(b, d1));
    c[0][1] = two(q.bilinear(b, d2));
    c[2][0] = q.eval(d1);
    c[1][1] = two(q.bilinear(d1, d2));
    c[0][2] = q.eval(d2);
    BiPoly::new(2, c)
}

/// First intersection point (in eliminant root order) whose back-substitution
/// residual is within tolerance. Root order does not depend on the scale of
/// the input forms, so neither does the choice.
fn first_valid(points: &[CurvePoint], prec: u32) -> Option<&CurvePoint> {
    let tol = scalar::tolerance(prec).to_f64();
    points.iter().find(|p| p.residual <= tol)
}

fn chart_point(
    b: &[Complex],
    d1: &[Complex],
    d2: &[Complex],
    u: &Complex,
    v: &Complex,
) -> Vec<Complex> {
    let prec = u.prec().0;
    let step = scalar::combine(
        &[u.clone(), v.clone()],
        &[d1.to_vec(), d2.to_vec()],
        b.len(),
        prec,
    );
    scalar::add_vec(b, &step)
}

/// Max of `|Q(v)| / (|v|^2 scale(Q))` over the two forms.
fn cone_residual(q1: &QuadraticForm, q2: &QuadraticForm, v: &[Complex]) -> f64 {
    let prec = prec_of_quadratic(q1);
    let n2 = scalar::norm_sqr(v);
    [q1, q2]
        .iter()
        .map(|q| {
            scalar::ratio(
                &scalar::abs(&q.eval(v)),
                &Float::with_val(prec, &n2 * q.scale()),
            )
        })
        .fold(0.0, f64::max)
}

/// A unit vector on both cones `Q1 = 0` and `Q2 = 0`, with the stage that
/// records the quartic eliminant solved to find it.
pub fn common_generator(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    seed: u64,
) -> Result<(Vec<Complex>, TraceStage)> {
    let m = q1.dim();
    if q2.dim() != m {
        return Err(Error::InvalidInput(
            "quadratic forms must share a dimension".into(),
        ));
    }
    if m < 3 {
        return Err(Error::InvalidInput(
            "a common generator needs at least 3 variables".into(),
        ));
    }
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "common-generator", attempt as u64);
        match generator_attempt(q1, q2, sub) {
            Ok(found) => return Ok(found),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::degenerate(
        "common_generator",
        MAX_ATTEMPTS,
        last.map_or_else(String::new, |e| e.to_string()),
    ))
}

fn generator_attempt(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    seed: u64,
) -> Result<(Vec<Complex>, TraceStage)> {
    let m = q1.dim();
    let prec = prec_of_quadratic(q1);
    let mut sampler = Sampler::new(seed, prec);
    let b = sampler.vector(m);
    let d1 = sampler.vector(m);
    let d2 = sampler.vector(m);
    let c1 = conic_in_chart(q1, &b, &d1, &d2);
    let c2 = conic_in_chart(q2, &b, &d1, &d2);
    let hit = intersect_curves("common-generator", &c1, &c2, prec)?;
    let point = first_valid(&hit.points, prec).ok_or_else(|| {
        Error::DegenerateSection(
            "no intersection point of the two conics survived back-substitution".into(),
        )
    })?;
    let v = normalized(chart_point(&b, &d1, &d2, &point.u, &point.v));
    let residual = cone_residual(q1, q2, &v);
    if residual > scalar::tolerance(prec).to_f64() {
        return Err(Error::DegenerateSection(format!(
            "generator residual {residual:e} above tolerance"
        )));
    }
    let stage = TraceStage::auxiliary(
        "common-generator",
        4,
        residual.max(hit.auxiliary.residual),
        seed,
    );
    Ok((v, stage))
}

/// A `k`-dimensional subspace on which both `Q1` and `Q2` vanish, for forms
/// in exactly `3k` variables. The stages hold one quartic per level of the
/// recursion, `k` in total.
///
/// Each level finds a common generator `g`, cuts the space with the two
/// tangent hyperplanes `B_i(g, .) = 0` and a random hyperplane missing `g`,
/// and recurses on the remaining `3k - 3` variables. For `w` in the inner
/// solution, `Q_i(a g + w) = a^2 Q_i(g) + 2a B_i(g, w) + Q_i(w) = 0`.
pub fn lemma1_subspace(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    k: usize,
    seed: u64,
) -> Result<(LinearSubspace, Vec<TraceStage>)> {
    if k == 0 || q1.dim() != 3 * k || q2.dim() != 3 * k {
        return Err(Error::InvalidInput(format!(
            "need two forms in exactly 3k variables, got {} and {} for k = {k}",
            q1.dim(),
            q2.dim()
        )));
    }
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "lemma1", attempt as u64);
        match lemma1_attempt(q1, q2, k, sub) {
            Ok(found) => return Ok(found),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::degenerate(
        "lemma1_subspace",
        MAX_ATTEMPTS,
        last.map_or_else(String::new, |e| e.to_string()),
    ))
}

fn lemma1_attempt(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    k: usize,
    seed: u64,
) -> Result<(LinearSubspace, Vec<TraceStage>)> {
    let m = q1.dim();
    let prec = prec_of_quadratic(q1);
    let mut stages = Vec::with_capacity(k);
    let basis = isotropic_basis(q1, q2, k, seed, 0, &mut stages)?;
    let s = LinearSubspace::new(m, basis, None)?.orthonormalized()?;

    let bound = scalar::tolerance(prec) * Float::with_val(prec, 32 * m * m);
    let mut worst = 0.0f64;
    for q in [q1, q2] {
        let r = q.restrict(&s).scale();
        let rel = scalar::ratio(&r, &q.scale());
        if r > Float::with_val(prec, &bound * q.scale()) {
            return Err(Error::degenerate(
                "lemma1_subspace",
                1,
                format!("restricted form residual {rel:e}"),
            ));
        }
        worst = worst.max(rel);
    }
    stages.push(TraceStage::linear("lemma1-subspace", worst, (m, k), seed));
    Ok((s, stages))
}

fn isotropic_basis(
    q1: &QuadraticForm,
    q2: &QuadraticForm,
    k: usize,
    seed: u64,
    level: u64,
    stages: &mut Vec<TraceStage>,
) -> Result<Vec<Vec<Complex>>> {
    let m = q1.dim();
    let prec = prec_of_quadratic(q1);
    let (g, stage) = common_generator(q1, q2, derive_seed(seed, "lemma1-generator", level))?;
    stages.push(stage);
    if k == 1 {
        return Ok(vec![g]);
    }

    let mut sampler = Sampler::new(derive_seed(seed, "lemma1-section", level), prec);
    let rows = vec![
        normalized(sampler.vector(m)),
        normalized(q1.apply(&g)),
        normalized(q2.apply(&g)),
    ];
    let rel_tol = scalar::pow2(prec, -((prec / 4) as i32));
    let null = linalg::null_space(&rows, m, &rel_tol, prec)
        .filter(|b| b.len() == m - 3)
        .ok_or_else(|| {
            Error::degenerate(
                "lemma1_subspace",
                1,
                "tangent hyperplanes at the generator are dependent",
            )
        })?;
    let w = LinearSubspace::new(m, null, None)?.orthonormalized()?;
    let inner = isotropic_basis(
        &q1.restrict(&w),
        &q2.restrict(&w),
        k - 1,
        seed,
        level + 1,
        stages,
    )?;

    let mut basis = Vec::with_capacity(k);
    basis.push(g);
    basis.extend(inner.iter().map(|c| w.embed(c)));
    Ok(basis)
}

/// Coefficients of the binary cubic `C(a s_1 + b s_2)` for a 2-plane `S`:
/// `a^3, a^2 b, a b^2, b^3`.
pub fn binary_cubic(c: &CubicForm, s: &LinearSubspace) -> [Complex; 4] {
    let r = c.restrict(s);
    let prec = r.get(0, 0, 0).prec().0;
    [
        r.get(0, 0, 0).clone(),
        Complex::with_val(prec, r.get(0, 0, 1) * 3u32),
        Complex::with_val(prec, r.get(0, 1, 1) * 3u32),
        r.get(1, 1, 1).clone(),
    ]
}

/// A 2-plane through the origin on the cubic cone `C = 0` in 5 variables,
/// with stages for the cubic and the sextic auxiliary equations.
///
/// A random line in a random affine hyperplane meets the cone in a point
/// `p` (cubic). In the tangent directions at `p` within that hyperplane,
/// `C(p + w) = Q(w) + K(w)`; a common zero direction `r` of `Q` and `K`
/// comes from a plane section in the 3 tangent coordinates (conic against
/// cubic, sextic eliminant). The line `p + s r` then lies on the cone, and
/// so does the plane spanned by `p` and `r`.
pub fn lemma2_plane(c: &CubicForm, seed: u64) -> Result<(LinearSubspace, Vec<TraceStage>)> {
    if c.dim() != 5 {
        return Err(Error::InvalidInput(format!(
            "need a cubic form in 5 variables, got {}",
            c.dim()
        )));
    }
    if c.scale().is_zero() {
        return Err(Error::InvalidInput("cubic form is identically zero".into()));
    }
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "lemma2", attempt as u64);
        match lemma2_attempt(c, sub) {
            Ok(found) => return Ok(found),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::degenerate(
        "lemma2_plane",
        MAX_ATTEMPTS,
        last.map_or_else(String::new, |e| e.to_string()),
    ))
}

fn lemma2_attempt(c: &CubicForm, seed: u64) -> Result<(LinearSubspace, Vec<TraceStage>)> {
    let prec = c.get(0, 0, 0).prec().0;
    let tol = scalar::tolerance(prec);
    let mut sampler = Sampler::new(seed, prec);
    let mut stages = Vec::with_capacity(3);

    // point on the cone along a random line of a random affine hyperplane
    let h0 = sampler.vector(5);
    let h = sampler.vectors(4, 5);
    let p0 = scalar::add_vec(&h0, &scalar::combine(&sampler.vector(4), &h, 5, prec));
    let dir = scalar::combine(&sampler.vector(4), &h, 5, prec);
    let along = |lam: &Complex| {
        let step: Vec<Complex> = dir
            .iter()
            .map(|d| Complex::with_val(prec, d * lam))
            .collect();
        c.eval(&scalar::add_vec(&p0, &step))
    };
    let cubic = fit_univariate(along, 3, prec);
    let aux = solve_auxiliary("lemma2-point", &cubic, 3, prec)?;
    stages.push(TraceStage::auxiliary("lemma2-point", 3, aux.residual, seed));
    let lam = aux
        .roots
        .iter()
        .min_by(|a, b| {
            scalar::abs(a)
                .partial_cmp(&scalar::abs(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    let p: Vec<Complex> = p0
        .iter()
        .zip(&dir)
        .map(|(a, d)| Complex::with_val(prec, a + Complex::with_val(prec, d * lam)))
        .collect();

    // tangent directions at p inside the hyperplane
    let gradient = LinearForm::new(
        h.iter()
            .map(|hv| Complex::with_val(prec, c.trilinear(&p, &p, hv) * 3u32))
            .collect(),
    );
    let p_norm = scalar::norm(&p);
    let reference = Float::with_val(prec, c.scale() * Float::with_val(prec, &p_norm * &p_norm));
    let tangent = forms::tangent_hyperplane_scaled(&gradient, &reference).map_err(|_| {
        Error::degenerate(
            "lemma2_plane",
            1,
            "cubic cone is singular at the chosen point",
        )
    })?;
    let directions: Vec<Vec<Complex>> = tangent
        .basis()
        .iter()
        .map(|y| scalar::combine(y, &h, 5, prec))
        .collect();
    let w = LinearSubspace::new(5, directions, None)?.orthonormalized()?;
    let reduced = |r: &[Complex]| c.eval(&scalar::add_vec(&p, &w.embed(r)));
    let parts = forms::extract_forms(&reduced, 3, 3, prec)?;
    let quad = parts
        .quadratic
        .as_ref()
        .expect("degree-3 extraction has a quadratic part");
    let cub = parts
        .cubic
        .as_ref()
        .expect("degree-3 extraction has a cubic part");
    // Special cubics (reducible, cones over lower-dimensional ones) can make
    // either graded part vanish identically at p.
    let unit_len = Float::with_val(prec, &p_norm + 1u32);
    let reference = Float::with_val(prec, c.scale() * Float::with_val(prec, unit_len.pow(3u32)));
    let negligible = |f: Float| f <= Float::with_val(prec, &tol * &reference);
    let r = match (negligible(quad.scale()), negligible(cub.scale())) {
        // the whole tangent section lies on the cone
        (true, true) => forms::unit(3, 0, prec),
        (true, false) => {
            let b = sampler.vector(3);
            let e = sampler.vector(3);
            let on_line = |mu: &Complex| chart_point(&b, &e, &e, mu, &scalar::zero(prec));
            let along = fit_univariate(|mu| cub.eval(&on_line(mu)), 3, prec);
            let aux = solve_auxiliary("lemma2-lines", &along, 3, prec)?;
            stages.push(TraceStage::auxiliary("lemma2-lines", 3, aux.residual, seed));
            on_line(&aux.roots[0])
        }
        (false, true) => {
            return Err(Error::degenerate(
                "lemma2_plane",
                1,
                "cubic part of the tangent section vanishes",
            ));
        }
        (false, false) => {
            // common direction of Q = 0 and K = 0 via a plane section
            let b = sampler.vector(3);
            let e1 = sampler.vector(3);
            let e2 = sampler.vector(3);
            let conic = BiPoly::fit(|u, v| quad.eval(&chart_point(&b, &e1, &e2, u, v)), 2, prec)?;
            let cubic_curve =
                BiPoly::fit(|u, v| cub.eval(&chart_point(&b, &e1, &e2, u, v)), 3, prec)?;
            let hit = intersect_curves("lemma2-lines", &conic, &cubic_curve, prec)?;
            let point = first_valid(&hit.points, prec).ok_or_else(|| {
                Error::DegenerateSection(
                    "no line through the point survived back-substitution".into(),
                )
            })?;
            stages.push(TraceStage::auxiliary(
                "lemma2-lines",
                6,
                hit.auxiliary.residual.max(point.residual),
                seed,
            ));
            chart_point(&b, &e1, &e2, &point.u, &point.v)
        }
    };
    let d = normalized(w.embed(&r));

    let s = LinearSubspace::new(5, vec![normalized(p), d], None)?.orthonormalized()?;
    let coeffs = binary_cubic(c, &s);
    let worst = scalar::max_abs(prec, coeffs.iter());
    let rel = scalar::ratio(&worst, &c.scale());
    if worst > Float::with_val(prec, &tol * c.scale()) {
        return Err(Error::degenerate(
            "lemma2_plane",
            1,
            format!("restricted cubic residual {rel:e}"),
        ));
    }
    stages.push(TraceStage::linear("lemma2-plane", rel, (5, 2), seed));
    Ok((s, stages))
}
