//! All-roots solver: Aberth–Ehrlich simultaneous iteration.
//!
//! Starting points come from the Newton polygon of the coefficient
//! magnitudes, so polynomials whose roots span many orders of magnitude
//! (typical for the elimination resultants in the pipeline) start with one
//! circle per magnitude band instead of a single circle.

use std::cmp::Ordering;
use std::f64::consts::PI;

use super::poly::UniPoly;
use super::scalar::{self, Complex, Float};
use crate::error::{Error, Result};

/// Extra bits carried while iterating; the returned roots are rounded back.
const GUARD_BITS: u32 = 32;
const ANGLE_OFFSET: f64 = 0.7;

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// `|p(r)|` for each root, same order as `roots`.
    pub residuals: Vec<Float>,
    pub certified_tol: Float,
}

/// Every root of `p`, sorted by real part and then imaginary part.
pub fn roots(p: &UniPoly, precision_bits: u32) -> Result<RootSet> {
    scalar::check_precision(precision_bits)?;
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidInput(
            "cannot take roots of a constant".into(),
        ));
    }
    if p.leading().is_zero() {
        return Err(Error::InvalidInput("leading coefficient is zero".into()));
    }
    let wp = precision_bits + GUARD_BITS;
    let work = p.with_prec(wp).make_monic();

    let mut found = if n == 1 {
        vec![Complex::with_val(wp, -work.coeff(0))]
    } else {
        aberth(&work)?
    };

    // Newton polish at working precision.
    for z in found.iter_mut() {
        let (v, dv) = work.eval_with_derivative(z);
        if !dv.is_zero() {
            *z -= Complex::with_val(wp, &v / &dv);
        }
    }

    let separation = precision_bits / 4;
    let sep = scalar::pow2(wp, -(separation as i32));
    for i in 0..n {
        let ri = scalar::abs(&found[i]);
        let radius = Float::with_val(wp, &sep * if ri > 1 { ri } else { Float::with_val(wp, 1) });
        for j in i + 1..n {
            let d = scalar::abs(&Complex::with_val(wp, &found[i] - &found[j]));
            if d <= radius {
                return Err(Error::NonSquarefree { separation });
            }
        }
    }

    let certified_tol = scalar::tolerance(precision_bits);
    let bound = Float::with_val(wp, &certified_tol * p.scale());
    let exact = p.with_prec(wp);
    let mut pairs: Vec<(Complex, Float)> = found
        .into_iter()
        .map(|z| {
            let res = Float::with_val(precision_bits, scalar::abs(&exact.eval(&z)));
            (Complex::with_val(precision_bits, &z), res)
        })
        .collect();
    if pairs.iter().any(|(_, r)| *r > bound) {
        return Err(Error::NoConvergence {
            iterations: max_iterations(n),
        });
    }
    pairs.sort_by(|a, b| cmp_lex(&a.0, &b.0));
    let (roots, residuals) = pairs.into_iter().unzip();
    Ok(RootSet {
        roots,
        residuals,
        certified_tol,
    })
}

/// Total order used for deterministic root lists.
pub fn cmp_lex(a: &Complex, b: &Complex) -> Ordering {
    a.real()
        .partial_cmp(b.real())
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.imag().partial_cmp(b.imag()).unwrap_or(Ordering::Equal))
}

fn max_iterations(n: usize) -> usize {
    400 + 20 * n
}

fn aberth(p: &UniPoly) -> Result<Vec<Complex>> {
    let n = p.degree();
    let wp = p.prec();
    let mut z = initial_points(p);
    let mut done = vec![false; n];
    let step_tol = scalar::pow2(wp, -(wp as i32 - 4));
    let backward_tol = Float::with_val(wp, scalar::pow2(wp, -(wp as i32 - 2)) * (n as u32 + 1));

    for _ in 0..max_iterations(n) {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(&z[i]);
            if v.is_zero() {
                done[i] = true;
                continue;
            }
            if Float::with_val(wp, scalar::abs(&v))
                <= Float::with_val(wp, &backward_tol * p.eval_abs(&z[i]))
            {
                done[i] = true;
            }
            let mut repulsion = scalar::zero(wp);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = Complex::with_val(wp, &z[i] - zj);
                    if !d.is_zero() {
                        repulsion += d.recip();
                    }
                }
            }
            let correction = if dv.is_zero() {
                // Stationary point: nudge off it.
                Complex::with_val(wp, (scalar::pow2(wp, -8), scalar::pow2(wp, -9)))
            } else {
                let newton = Complex::with_val(wp, &v / &dv);
                let denom = Complex::with_val(wp, 1 - Complex::with_val(wp, &newton * &repulsion));
                if denom.is_zero() {
                    newton
                } else {
                    newton / denom
                }
            };
            let step = scalar::abs(&correction);
            z[i] -= &correction;
            if step <= Float::with_val(wp, &step_tol * scalar::abs(&z[i])) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iterations(n),
    })
}

/// One circle of starting points per edge of the upper convex hull of
/// `(i, log2 |a_i|)`.
fn initial_points(p: &UniPoly) -> Vec<Complex> {
    let n = p.degree();
    let wp = p.prec();
    let logs: Vec<Option<f64>> = p
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                None
            } else {
                Some(scalar::abs(c).log2().to_f64())
            }
        })
        .collect();

    let mut hull: Vec<usize> = Vec::new();
    for (i, l) in logs.iter().enumerate() {
        let Some(li) = *l else { continue };
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let (la, lb) = (logs[a].unwrap(), logs[b].unwrap());
            // Drop b if it lies on or below the segment a -> i.
            let cross = (b - a) as f64 * (li - la) - (i - a) as f64 * (lb - la);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }

    let mut points = Vec::with_capacity(n);
    // Exact zero roots below the first nonzero coefficient.
    for _ in 0..hull[0] {
        points.push(Complex::with_val(
            wp,
            (scalar::pow2(wp, -(wp as i32 / 2)), 0),
        ));
    }
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let log_r = (logs[i].unwrap() - logs[j].unwrap()) / count as f64;
        let radius = Float::with_val(wp, log_r).exp2();
        for k in 0..count {
            let theta =
                2.0 * PI * k as f64 / count as f64 + 2.0 * PI * i as f64 / n as f64 + ANGLE_OFFSET;
            let unit = Complex::with_val(wp, (theta.cos(), theta.sin()));
            points.push(unit * &radius);
        }
    }
    points
}
