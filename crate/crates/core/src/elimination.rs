//! Intersection of two affine plane curves by eliminating one chart variable.

use crate::error::{Error, Result};
use crate::numerics::bivariate::{polish_common_zero, resultant_in_v, BiPoly};
use crate::numerics::roots;
use crate::numerics::scalar::{self, Complex, Float};
use crate::trace::{solve_auxiliary, Auxiliary};

const POLISH_STEPS: usize = 8;

#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub u: Complex,
    pub v: Complex,
    /// Larger of the two relative residuals `|f| / sum |c_ij| |u|^i |v|^j`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CurveIntersection {
    /// The eliminant `Res_v(f, g)` solved as an auxiliary equation.
    pub auxiliary: Auxiliary,
    /// One back-substituted point per eliminant root, in root order.
    pub points: Vec<CurvePoint>,
}

fn residual(f: &BiPoly, g: &BiPoly, u: &Complex, v: &Complex) -> f64 {
    let a = scalar::ratio(&scalar::abs(&f.eval(u, v)), &f.eval_abs(u, v));
    let b = scalar::ratio(&scalar::abs(&g.eval(u, v)), &g.eval_abs(u, v));
    a.max(b)
}

/// `max_k (|f_k| / |f_d|)^(1/(d-k))` over the homogeneous parts `f_k`: the
/// size of `(u, v)` at which the top-degree part starts to dominate.
fn chart_radius(f: &BiPoly) -> Float {
    let prec = f.prec();
    let d = f.degree();
    let top = f.homogeneous_scale(d);
    let mut rho = Float::with_val(prec, 1);
    if top.is_zero() {
        return rho;
    }
    let mut first = true;
    for k in 0..d {
        let part = f.homogeneous_scale(k);
        if part.is_zero() {
            continue;
        }
        let r = Float::with_val(prec, &part / &top).root((d - k) as u32);
        if first || r > rho {
            rho = r;
            first = false;
        }
    }
    rho
}

/// Common points of `f = 0` and `g = 0`.
///
/// The eliminant has degree `deg f * deg g` when both curves have a nonzero
/// `v^deg` term, which holds for charts in general position; otherwise the
/// configuration is reported as degenerate. Each root `u` is completed by
/// the root `v` of `f(u, .)` that best satisfies `g`, then refined by
/// Newton's method on the pair. Spurious completions keep their (large)
/// residual so callers can filter them.
pub fn intersect_curves(
    stage: &str,
    f: &BiPoly,
    g: &BiPoly,
    prec: u32,
) -> Result<CurveIntersection> {
    let floor = scalar::pow2(prec, -((prec / 4) as i32));
    for (curve, name) in [(f, "first"), (g, "second")] {
        let lc = scalar::abs(curve.coeff(0, curve.degree()));
        if lc <= Float::with_val(prec, &floor * curve.scale()) {
            return Err(Error::degenerate(
                stage,
                1,
                format!("{name} curve is not in general position in the chart"),
            ));
        }
    }
    // work in coordinates where the intersection points have modulus
    // around one, so the eliminant's coefficients are balanced
    let rho = Float::with_val(prec, chart_radius(f) * chart_radius(g)).sqrt();
    let (f, g) = (
        &f.with_scaled_arguments(&rho),
        &g.with_scaled_arguments(&rho),
    );
    let eliminant = resultant_in_v(f, g);
    let degree = f.degree() * g.degree();
    let auxiliary = solve_auxiliary(stage, &eliminant, degree, prec)?;

    let mut points = Vec::with_capacity(degree);
    for u in &auxiliary.roots {
        let candidates = match roots(&f.in_v_at(u), prec) {
            Ok(rs) => rs.roots,
            Err(_) => match roots(&g.in_v_at(u), prec) {
                Ok(rs) => rs.roots,
                Err(_) => continue,
            },
        };
        let v0 = candidates
            .iter()
            .map(|v| (residual(f, g, u, v), v))
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(_, v)| v.clone())
            .unwrap();
        let (u, v) = polish_common_zero(f, g, u, &v0, POLISH_STEPS);
        let residual = residual(f, g, &u, &v);
        points.push(CurvePoint {
            u: Complex::with_val(prec, u * &rho),
            v: Complex::with_val(prec, v * &rho),
            residual,
        });
    }
    Ok(CurveIntersection { auxiliary, points })
}
