//! Tschirnhaus transformations `y = g(x)` of a monic polynomial `f`, with
//! `g(x) = t_0 + t_1 x + ... + t_{n-2} x^{n-2} + x^{n-1}`.
//!
//! The transformed polynomial `prod (y - g(x_i))` is computed without root
//! extraction: the power sums `sum g(x_i)^k` are traces of `g^k` in
//! `C[x] / (f)`, and Newton's identities turn them into coefficients.

use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::forms::{self, LinearSubspace};
use crate::numerics::bivariate::{fit_univariate, unit_roots};
use crate::numerics::linalg;
use crate::numerics::resultant::sylvester_matrix;
use crate::numerics::scalar::{self, Complex, Float};
use crate::numerics::{
    coeffs_from_power_sums, leading_coeffs_from_power_sums, power_sums, roots, UniPoly,
};
use crate::rng::{derive_seed, Sampler};
use crate::trace::{solve_auxiliary, TraceStage};

/// Retries per randomized stage before a degeneracy is surfaced.
pub const MAX_ATTEMPTS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct TschirnhausMap {
    n: usize,
    t: Vec<Complex>,
}

impl TschirnhausMap {
    /// `t` holds `t_0, ..., t_{n-2}`.
    pub fn new(n: usize, t: Vec<Complex>) -> Result<Self> {
        if n < 2 || t.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "a degree-{n} map needs n-1 coefficients, got {}",
                t.len()
            )));
        }
        Ok(TschirnhausMap { n, t })
    }

    pub fn zero(n: usize, prec: u32) -> Self {
        TschirnhausMap {
            n,
            t: vec![scalar::zero(prec); n - 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &[Complex] {
        &self.t
    }

    /// `g` as a monic polynomial of degree `n - 1`.
    pub fn polynomial(&self) -> UniPoly {
        let prec = self.t[0].prec().0;
        UniPoly::monic(prec, &self.t)
    }

    pub fn apply(&self, x: &Complex) -> Complex {
        self.polynomial().eval(x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformedEquation {
    pub source: UniPoly,
    pub map: TschirnhausMap,
    /// Monic, degree `n`.
    pub result: UniPoly,
    /// `C_1, ..., C_n`; `C_i` is the coefficient of `y^(n-i)`.
    pub c: Vec<Complex>,
}

/// Arithmetic in `C[x] / (f)` for monic `f`, with the trace form.
#[derive(Clone, Debug)]
struct QuotientRing {
    f: UniPoly,
    /// Traces of `1, x, ..., x^(n-1)`: `n, p_1, ..., p_{n-1}`.
    traces: Vec<Complex>,
}

impl QuotientRing {
    fn new(f: &UniPoly) -> Self {
        let n = f.degree();
        let prec = f.prec();
        let mut traces = vec![scalar::from_i64(prec, n as i64)];
        traces.extend(power_sums(f, n - 1));
        QuotientRing {
            f: f.clone(),
            traces,
        }
    }

    fn n(&self) -> usize {
        self.f.degree()
    }

    fn mul(&self, a: &[Complex], b: &[Complex]) -> Vec<Complex> {
        let n = self.n();
        let prec = self.f.prec();
        let mut prod = vec![scalar::zero(prec); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let lead = std::mem::replace(&mut prod[d], scalar::zero(prec));
            if lead.is_zero() {
                continue;
            }
            for (i, fi) in self.f.coeffs()[..n].iter().enumerate() {
                prod[d - n + i] -= &lead * fi;
            }
        }
        prod.truncate(n);
        prod
    }

    fn trace(&self, a: &[Complex]) -> Complex {
        scalar::dot(a, &self.traces)
    }

    /// Power sums `sum g(x_i)^k` for `k = 1..=k_max`, for `g` reduced mod `f`.
    fn power_sums_of(&self, g: &[Complex], k_max: usize) -> Vec<Complex> {
        let mut sums = Vec::with_capacity(k_max);
        let mut h = g.to_vec();
        sums.push(self.trace(&h));
        for _ in 1..k_max {
            h = self.mul(&h, g);
            sums.push(self.trace(&h));
        }
        sums
    }
}

fn check_source(f: &UniPoly) -> Result<()> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput(
            "source polynomial must have degree at least 2".into(),
        ));
    }
    if !f.is_monic() {
        return Err(Error::InvalidInput(
            "source polynomial must be monic".into(),
        ));
    }
    Ok(())
}

/// The map `t -> (C_1(t), ..., C_k(t))` for a fixed source polynomial.
///
/// `C_i` is a polynomial of total degree `i` in `t`; evaluation costs
/// `i - 1` multiplications in `C[x]/(f)`.
#[derive(Clone, Debug)]
pub struct CoefficientFunctional {
    ring: QuotientRing,
    index: usize,
}

impl CoefficientFunctional {
    pub fn new(f: &UniPoly, index: usize) -> Result<Self> {
        check_source(f)?;
        if index == 0 || index > f.degree() {
            return Err(Error::InvalidInput(format!(
                "coefficient index must be in 1..={}, got {index}",
                f.degree()
            )));
        }
        Ok(CoefficientFunctional {
            ring: QuotientRing::new(f),
            index,
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `C_index(t)` for `t = (t_0, ..., t_{n-2})`.
    pub fn eval(&self, t: &[Complex]) -> Complex {
        self.eval_upto(t, self.index).pop().unwrap()
    }

    /// `C_1(t), ..., C_k(t)` for any `k <= n`.
    pub fn eval_upto(&self, t: &[Complex], k: usize) -> Vec<Complex> {
        let n = self.ring.n();
        assert_eq!(t.len(), n - 1, "expected n-1 map coefficients");
        assert!(k <= n);
        let prec = self.ring.f.prec();
        let mut g: Vec<Complex> = t.iter().map(|z| scalar::to_prec(z, prec)).collect();
        g.push(scalar::one(prec));
        let sums = self.ring.power_sums_of(&g, k);
        leading_coeffs_from_power_sums(&sums, k)
    }

    /// The black box `t -> C_index(t)`.
    pub fn as_fn(&self) -> impl Fn(&[Complex]) -> Complex + '_ {
        move |t| self.eval(t)
    }
}

/// Black-box evaluator of `C_i` as a function of the map coefficients.
pub fn coefficient_functional(f: &UniPoly, i: usize) -> Result<CoefficientFunctional> {
    CoefficientFunctional::new(f, i)
}

/// Transformed polynomial `prod (y - g(x_i))`.
///
/// Computed from power sums in `C[x]/(f)` and cross-checked against
/// `Res_x(f(x), y - g(x))` interpolated on a circle matched to the root
/// radius; disagreement beyond `n^2 * 2^(-precision/2)` (relative to that
/// radius) is `PrecisionExhausted`.
pub fn transform(f: &UniPoly, map: &TschirnhausMap) -> Result<TransformedEquation> {
    check_source(f)?;
    let n = f.degree();
    if map.n() != n {
        return Err(Error::InvalidInput(format!(
            "map is for degree {}, source has degree {n}",
            map.n()
        )));
    }
    let prec = f.prec();
    let work = prec + cancellation_bits(f, map);
    let ring = QuotientRing::new(&f.with_prec(work));
    let mut g: Vec<Complex> = map.t().iter().map(|z| scalar::to_prec(z, work)).collect();
    g.push(scalar::one(work));
    let sums = ring.power_sums_of(&g, n);
    let result = coeffs_from_power_sums(&sums, n).with_prec(prec);

    let radius = root_radius(&result);
    let via_resultant = resultant_path(f, map, &radius);
    let mut worst = Float::new(prec);
    let mut weight = Float::with_val(prec, 1);
    for k in (0..=n).rev() {
        // coefficient of y^k is C_{n-k}, natural size radius^(n-k)
        let diff = scalar::abs(&Complex::with_val(
            prec,
            result.coeff(k) - via_resultant.coeff(k),
        ));
        let rel = Float::with_val(prec, &diff / &weight);
        if rel > worst {
            worst = rel;
        }
        weight *= &radius;
    }
    let bound = Float::with_val(prec, scalar::tolerance(prec) * (n * n) as u32);
    if worst > bound {
        return Err(Error::PrecisionExhausted(format!(
            "power-sum and resultant transforms disagree by {:e} (bound {:e})",
            worst.to_f64(),
            bound.to_f64()
        )));
    }

    let c = (1..=n).map(|i| result.coeff(n - i).clone()).collect();
    Ok(TransformedEquation {
        source: f.clone(),
        map: map.clone(),
        result,
        c,
    })
}

/// Guard bits for the power-sum path: `p_n` can be as large as `Y^n`, with
/// `Y` a bound on `|g(x_i)|`, while the coefficients it produces may be of
/// order one.
fn cancellation_bits(f: &UniPoly, map: &TschirnhausMap) -> u32 {
    let prec = f.prec();
    // every root has modulus below twice the root radius
    let rx = Float::with_val(prec, root_radius(f) * 2u32);
    let mut y = Float::with_val(prec, 1);
    let mut power = Float::with_val(prec, 1);
    for t in map.t() {
        y += Float::with_val(prec, scalar::abs(t) * &power);
        power *= &rx;
    }
    y += &power;
    let bits = y.log2().to_f64().max(0.0) * f.degree() as f64;
    32 + bits.ceil() as u32
}

/// `max_i |C_i|^(1/i)` over the non-leading coefficients of a monic
/// polynomial: within a factor two of the largest root modulus. Defaults
/// to one for `y^n`.
pub fn root_radius(p: &UniPoly) -> Float {
    let n = p.degree();
    let prec = p.prec();
    let mut r = Float::new(prec);
    for i in 1..=n {
        let c = scalar::abs(p.coeff(n - i));
        if c.is_zero() {
            continue;
        }
        let root = c.root(i as u32);
        if root > r {
            r = root;
        }
    }
    if r.is_zero() {
        Float::with_val(prec, 1)
    } else {
        r
    }
}

/// `|C_k| / R^k` for `k = 1..=count`, with `R` the root radius of the full
/// coefficient list `c = (C_1, ..., C_n)`.
pub fn relative_coefficients(c: &[Complex], count: usize) -> Vec<f64> {
    let prec = c[0].prec().0;
    let mut poly: Vec<Complex> = c.iter().rev().cloned().collect();
    poly.push(scalar::one(prec));
    let radius = root_radius(&UniPoly::new(poly));
    let mut weight = Float::with_val(prec, 1);
    c.iter()
        .take(count)
        .map(|ck| {
            weight *= &radius;
            scalar::ratio(&scalar::abs(ck), &weight)
        })
        .collect()
}

fn resultant_path(f: &UniPoly, map: &TschirnhausMap, radius: &Float) -> UniPoly {
    let n = f.degree();
    let prec = f.prec();
    let g = map.polynomial().with_prec(prec);
    let count = n + 1;
    let nodes: Vec<Complex> = unit_roots(count, prec)
        .into_iter()
        .map(|w| Complex::with_val(prec, w * radius))
        .collect();
    let values: Vec<Complex> = nodes
        .iter()
        .map(|y| {
            // y - g(x)
            let mut h: Vec<Complex> = g
                .coeffs()
                .iter()
                .map(|c| Complex::with_val(prec, -c))
                .collect();
            h[0] += y;
            linalg::determinant(sylvester_matrix(f, &UniPoly::new(h)), prec)
        })
        .collect();
    // c_k = (1 / (N r^k)) sum_j v_j w^(-jk)
    let unit = unit_roots(count, prec);
    let mut coeffs = Vec::with_capacity(count);
    let mut rk = Float::with_val(prec, 1);
    for k in 0..count {
        let mut acc = scalar::zero(prec);
        for (j, v) in values.iter().enumerate() {
            acc += v * &unit[(count - (j * k) % count) % count];
        }
        acc /= count as u32;
        acc /= &rk;
        coeffs.push(acc);
        rk *= radius;
    }
    UniPoly::new(coeffs)
}

/// The map with `t_0` chosen so that `C_1 = 0`, given `t_1, ..., t_{n-2}`.
///
/// `C_1 = -(n t_0 + sum_{j>=1} t_j p_j + p_{n-1})`, with `p_j` the power
/// sums of the roots of `f`.
pub fn kill_c1(f: &UniPoly, t_rest: &[Complex]) -> Result<TschirnhausMap> {
    check_source(f)?;
    let n = f.degree();
    if t_rest.len() != n - 2 {
        return Err(Error::InvalidInput(format!(
            "expected {} free coefficients, got {}",
            n - 2,
            t_rest.len()
        )));
    }
    let p = power_sums(f, n - 1);
    Ok(kill_c1_with(&p, t_rest, f.prec()))
}

fn kill_c1_with(p: &[Complex], t_rest: &[Complex], prec: u32) -> TschirnhausMap {
    let n = p.len() + 1;
    let mut acc = Complex::with_val(prec, &p[n - 2]);
    for (j, tj) in t_rest.iter().enumerate() {
        acc += tj * &p[j];
    }
    let t0 = -(acc / n as u32);
    let mut t = Vec::with_capacity(n - 1);
    t.push(t0);
    t.extend(t_rest.iter().map(|z| scalar::to_prec(z, prec)));
    TschirnhausMap { n, t }
}

/// Affine chart of the hyperplane `C_1 = 0` in map-coefficient space.
///
/// The chart origin is `g = x^(n-1) + t_0`. Its directions are polynomials
/// of degree `<= n-2` whose value vectors `(h(x_1), ..., h(x_n))` at the
/// roots of `f` are orthogonal, centered, and as long as the value vector
/// of the origin. Random choices in chart coordinates are then spread
/// evenly over the transformed roots; monomial coordinates would let a
/// single large root dominate every direction. If the roots cannot be
/// separated the monomial directions are used.
#[derive(Clone, Debug)]
pub struct C1Chart {
    sums: Vec<Complex>,
    /// `t_1, ..., t_{n-2}` of each direction.
    directions: Vec<Vec<Complex>>,
    prec: u32,
}

impl C1Chart {
    pub fn new(f: &UniPoly) -> Result<Self> {
        check_source(f)?;
        let n = f.degree();
        let prec = f.prec();
        let directions = match roots(f, prec) {
            Ok(rs) => value_orthogonal_directions(&rs.roots, prec),
            Err(_) => None,
        }
        .unwrap_or_else(|| (0..n - 2).map(|j| forms::unit(n - 2, j, prec)).collect());
        Ok(C1Chart {
            sums: power_sums(f, n - 1),
            directions,
            prec,
        })
    }

    pub fn dim(&self) -> usize {
        self.sums.len() - 1
    }

    pub fn map_at(&self, s: &[Complex]) -> TschirnhausMap {
        let t_rest = scalar::combine(s, &self.directions, self.dim(), self.prec);
        kill_c1_with(&self.sums, &t_rest, self.prec)
    }

    /// Chart coordinates of a map (its `t_0` is ignored).
    pub fn coords_of(&self, map: &TschirnhausMap) -> Vec<Complex> {
        let d = self.dim();
        let matrix = (0..d)
            .map(|row| self.directions.iter().map(|dir| dir[row].clone()).collect())
            .collect();
        linalg::solve(matrix, map.t()[1..].to_vec(), self.prec)
            .expect("chart directions are independent")
    }
}

/// Directions for [`C1Chart`]: Gram–Schmidt on the centered value vectors
/// of `x, ..., x^(n-2)`, carrying the coefficients along, in extra
/// precision since the monomial value vectors are far from orthogonal.
fn value_orthogonal_directions(xs: &[Complex], prec: u32) -> Option<Vec<Vec<Complex>>> {
    let n = xs.len();
    let work = prec + 64;
    let xs: Vec<Complex> = xs.iter().map(|x| scalar::to_prec(x, work)).collect();
    let centered = |j: usize| -> Vec<Complex> {
        let vals: Vec<Complex> = xs
            .iter()
            .map(|x| Complex::with_val(work, x.pow(j as u32)))
            .collect();
        let mut mean = scalar::zero(work);
        for v in &vals {
            mean += v;
        }
        mean /= n as u32;
        vals.into_iter().map(|v| v - &mean).collect()
    };
    let target = scalar::norm(&centered(n - 1));
    let floor = scalar::pow2(work, -((prec / 2) as i32));
    let mut values: Vec<Vec<Complex>> = Vec::with_capacity(n - 2);
    let mut coeffs: Vec<Vec<Complex>> = Vec::with_capacity(n - 2);
    for j in 1..n - 1 {
        let mut v = centered(j);
        let mut c = forms::unit(n - 2, j - 1, work);
        let before = scalar::norm(&v);
        for _pass in 0..2 {
            for (vk, ck) in values.iter().zip(&coeffs) {
                let r = linalg::inner(vk, &v);
                for (a, b) in v.iter_mut().zip(vk) {
                    *a -= Complex::with_val(work, b * &r);
                }
                for (a, b) in c.iter_mut().zip(ck) {
                    *a -= Complex::with_val(work, b * &r);
                }
            }
        }
        let norm = scalar::norm(&v);
        if norm.is_zero() || norm < Float::with_val(work, &before * &floor) {
            return None;
        }
        values.push(
            v.iter()
                .map(|a| Complex::with_val(work, a / &norm))
                .collect(),
        );
        coeffs.push(
            c.iter()
                .map(|a| Complex::with_val(work, a / &norm))
                .collect(),
        );
    }
    Some(
        coeffs
            .into_iter()
            .map(|c| {
                c.iter()
                    .map(|a| Complex::with_val(prec, a * &target))
                    .collect()
            })
            .collect(),
    )
}

fn point_on_line(base: &[Complex], dir: &[Complex], step: &Complex) -> Vec<Complex> {
    base.iter()
        .zip(dir)
        .map(|(b, d)| Complex::with_val(b.prec(), b + Complex::with_val(b.prec(), d * step)))
        .collect()
}

fn smallest(roots: &[Complex]) -> Complex {
    // roots arrive sorted, so the first minimum is the deterministic pick
    roots
        .iter()
        .min_by(|a, b| {
            scalar::abs(a)
                .partial_cmp(&scalar::abs(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap()
        .clone()
}

/// A map with `C_1 = C_2 = C_3 = 0`, found with two quadratic and one cubic
/// auxiliary equation:
///
/// 1. `C_1 = 0` is solved linearly for `t_0`, giving a chart of its hyperplane;
/// 2. a random line in the chart meets the quadric `C_2 = 0` (degree 2);
/// 3. through that point, a line on the quadric is found in the tangent
///    space by making the quadratic part vanish on a random pencil (degree 2);
/// 4. `C_3` restricted to that line is a cubic (degree 3).
///
/// Among the cubic's roots the one maximizing `|C_n| / R^n` is kept, which
/// keeps the later normalization away from a vanishing constant term.
pub fn find_c123_point(f: &UniPoly, seed: u64) -> Result<(TschirnhausMap, Vec<TraceStage>)> {
    check_source(f)?;
    if f.degree() < 5 {
        return Err(Error::InvalidInput(
            "finding a C1=C2=C3=0 point needs degree at least 5".into(),
        ));
    }
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let sub = derive_seed(seed, "c123", attempt as u64);
        match c123_attempt(f, sub) {
            Ok(found) => return Ok(found),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::degenerate(
        "find_c123_point",
        MAX_ATTEMPTS,
        last.map_or_else(String::new, |e| e.to_string()),
    ))
}

fn c123_attempt(f: &UniPoly, seed: u64) -> Result<(TschirnhausMap, Vec<TraceStage>)> {
    let n = f.degree();
    let prec = f.prec();
    let chart = C1Chart::new(f)?;
    let functional = CoefficientFunctional::new(f, n)?;
    let c_at = |s: &[Complex], k: usize| -> Complex {
        functional.eval_upto(chart.map_at(s).t(), k).pop().unwrap()
    };
    let mut sampler = Sampler::new(seed, prec);
    let dim = chart.dim();
    let mut stages = Vec::with_capacity(3);

    // (ii) random line against the quadric C_2 = 0
    let base = sampler.vector(dim);
    let dir = sampler.vector(dim);
    let along = fit_univariate(|lam| c_at(&point_on_line(&base, &dir, lam), 2), 2, prec);
    let aux = solve_auxiliary("c2-line", &along, 2, prec)?;
    stages.push(TraceStage::auxiliary("c2-line", 2, aux.residual, seed));
    let p1 = point_on_line(&base, &dir, &smallest(&aux.roots));

    // (iii) a ruling of the quadric through p1
    let shifted = |w: &[Complex]| c_at(&scalar::add_vec(&p1, w), 2);
    let gradient = forms::linear_part(&shifted, dim, 2, prec);
    let tangent =
        forms::tangent_hyperplane_scaled(&gradient, &gradient_reference(&shifted, dim, prec))
            .map_err(|_| {
                Error::degenerate("c2-ruling", 1, "quadric is singular at the chosen point")
            })?;
    let mix_a = sampler.vector(tangent.dim());
    let mix_b = sampler.vector(tangent.dim());
    let a = tangent.embed(&mix_a);
    let b = tangent.embed(&mix_b);
    let pencil = fit_univariate(|nu| shifted(&point_on_line(&a, &b, nu)), 2, prec);
    let aux = solve_auxiliary("c2-ruling", &pencil, 2, prec)?;
    stages.push(TraceStage::auxiliary("c2-ruling", 2, aux.residual, seed));
    let w = point_on_line(&a, &b, &smallest(&aux.roots));

    // (iv) C_3 along the ruling
    let cubic = fit_univariate(|mu| c_at(&point_on_line(&p1, &w, mu), 3), 3, prec);
    let aux = solve_auxiliary("c3-on-ruling", &cubic, 3, prec)?;
    let mut best: Option<(f64, TschirnhausMap, Vec<f64>)> = None;
    for mu in &aux.roots {
        let map = chart.map_at(&point_on_line(&p1, &w, mu));
        let c = functional.eval_upto(map.t(), n);
        let rel = relative_coefficients(&c, n);
        if best
            .as_ref()
            .is_none_or(|(score, _, _)| rel[n - 1] > *score)
        {
            best = Some((rel[n - 1], map, rel));
        }
    }
    let (_, map, rel) = best.unwrap();
    let residual = rel[..3].iter().cloned().fold(0.0, f64::max);
    stages.push(TraceStage::auxiliary(
        "c3-on-ruling",
        3,
        residual.max(aux.residual),
        seed,
    ));
    if residual > scalar::tolerance(prec).to_f64() {
        return Err(Error::degenerate(
            "find_c123_point",
            1,
            format!("C1..C3 residual {residual:e} above tolerance"),
        ));
    }
    Ok((map, stages))
}

/// Typical magnitude of a black box's first differences, used to decide
/// whether a gradient counts as zero.
fn gradient_reference<F: Fn(&[Complex]) -> Complex>(f: &F, dim: usize, prec: u32) -> Float {
    let zero = vec![scalar::zero(prec); dim];
    let mut r = scalar::abs(&f(&zero));
    for i in 0..dim.min(3) {
        let v = scalar::abs(&f(&forms::unit(dim, i, prec)));
        if v > r {
            r = v;
        }
    }
    r
}

/// `z`-polynomial with constant term exactly one, and the scale factor
/// `c = C_n^(1/n)` (principal branch), so that `z_i = y_i / c`.
///
/// The coefficient of `z^(n-i)` is `C_i c^(n-i) / C_n`.
pub fn normalize_constant(p: &UniPoly) -> Result<(UniPoly, Complex)> {
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::InvalidInput(
            "normalization needs a monic polynomial of positive degree".into(),
        ));
    }
    let n = p.degree();
    let prec = p.prec();
    let cn = p.coeff(0);
    let floor = Float::with_val(prec, scalar::tolerance(prec) * p.scale());
    if scalar::abs(cn) <= floor {
        return Err(Error::ZeroConstant);
    }
    let c = (Complex::with_val(prec, cn.ln_ref()) / n as u32).exp();
    let inv_cn = Complex::with_val(prec, cn.recip_ref());
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(scalar::one(prec));
    let mut cpow = Complex::with_val(prec, &c);
    for k in 1..n {
        // coefficient of z^k: C_{n-k} c^k / C_n
        coeffs.push(Complex::with_val(prec, p.coeff(k) * &cpow) * &inv_cn);
        cpow *= &c;
    }
    coeffs.push(scalar::one(prec));
    Ok((UniPoly::new(coeffs), c))
}

/// Random subspace of given dimension inside `within`, orthonormalized.
pub fn random_subspace(
    within: &LinearSubspace,
    dim: usize,
    sampler: &mut Sampler,
) -> Result<LinearSubspace> {
    let mixes = sampler.vectors(dim, within.dim());
    let inner = LinearSubspace::new(within.dim(), mixes, None)?;
    within.compose(&inner)?.orthonormalized()
}
