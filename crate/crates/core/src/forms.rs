//! Linear, quadratic and cubic forms over complex scalars.
//!
//! Forms are recovered from black-box polynomial maps by polarization:
//! differences at unit vectors and at sums of two or three unit vectors,
//! with step 1 (and 2 for separating odd degrees). For a map of total
//! degree at most three these identities are exact, so the only error is
//! rounding in the black box itself.

use crate::error::{Error, Result};
use crate::numerics::linalg::{self, Matrix};
use crate::numerics::scalar::{self, Complex, Float};
use crate::rng::Sampler;

/// Seed for the reconstruction check in [`extract_forms`].
const CHECK_SEED: u64 = 0x0005_eedf_04d5;
const CHECK_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    coeffs: Vec<Complex>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        LinearForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn eval(&self, v: &[Complex]) -> Complex {
        scalar::dot(&self.coeffs, v)
    }

    pub fn scale(&self) -> Float {
        scalar::max_abs(prec_of(&self.coeffs), &self.coeffs)
    }
}

/// `Q(v) = v^T M v` with `M` symmetric (bilinear, no conjugation).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    matrix: Matrix,
}

impl QuadraticForm {
    /// Symmetrizes `(M + M^T) / 2`.
    pub fn new(matrix: Matrix) -> Self {
        let m = matrix.len();
        assert!(
            matrix.iter().all(|r| r.len() == m),
            "quadratic form needs a square matrix"
        );
        let mut sym = matrix.clone();
        for i in 0..m {
            for j in i + 1..m {
                let avg =
                    Complex::with_val(matrix[i][j].prec(), &matrix[i][j] + &matrix[j][i]) / 2u32;
                sym[i][j] = avg.clone();
                sym[j][i] = avg;
            }
        }
        QuadraticForm { matrix: sym }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Complex {
        &self.matrix[i][j]
    }

    fn prec(&self) -> u32 {
        self.matrix[0][0].prec().0
    }

    /// `M v`, half the gradient of `Q` at `v`.
    pub fn apply(&self, v: &[Complex]) -> Vec<Complex> {
        self.matrix.iter().map(|row| scalar::dot(row, v)).collect()
    }

    pub fn bilinear(&self, a: &[Complex], b: &[Complex]) -> Complex {
        scalar::dot(a, &self.apply(b))
    }

    pub fn eval(&self, v: &[Complex]) -> Complex {
        self.bilinear(v, v)
    }

    pub fn scale(&self) -> Float {
        scalar::max_abs(self.prec(), self.matrix.iter().flatten())
    }
}

/// Fully symmetric 3-tensor; `C(v) = sum_{i,j,k} T_ijk v_i v_j v_k`.
/// Only the entries with `i <= j <= k` are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm {
    dim: usize,
    entries: Vec<Complex>,
}

/// Position of the sorted triple `i <= j <= k` among all sorted triples in
/// lexicographic order.
fn triple_index(dim: usize, i: usize, j: usize, k: usize) -> usize {
    let mut sorted = [i, j, k];
    sorted.sort_unstable();
    let [a, b, c] = sorted;
    // triples whose first index is < a, then second index < b (first = a),
    // then third index < c.
    let tri = |n: usize| n * (n + 1) / 2;
    let tet = |n: usize| n * (n + 1) * (n + 2) / 6;
    let before_a = tet(dim) - tet(dim - a);
    let before_b = tri(dim - a) - tri(dim - b);
    before_a + before_b + (c - b)
}

fn multiplicity(i: usize, j: usize, k: usize) -> u32 {
    if i == j && j == k {
        1
    } else if i == j || j == k || i == k {
        3
    } else {
        6
    }
}

impl CubicForm {
    pub fn zero(dim: usize, prec: u32) -> Self {
        CubicForm {
            dim,
            entries: vec![scalar::zero(prec); dim * (dim + 1) * (dim + 2) / 6],
        }
    }

    /// Builds the tensor from a function of sorted triples.
    pub fn from_fn(
        dim: usize,
        prec: u32,
        mut f: impl FnMut(usize, usize, usize) -> Complex,
    ) -> Self {
        let mut form = CubicForm::zero(dim, prec);
        for (i, j, k) in sorted_triples(dim) {
            form.entries[triple_index(dim, i, j, k)] = f(i, j, k);
        }
        form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Complex {
        &self.entries[triple_index(self.dim, i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Complex) {
        self.entries[triple_index(self.dim, i, j, k)] = value;
    }

    /// `(i, j, k, T_ijk)` for `i <= j <= k` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Complex)> + '_ {
        sorted_triples(self.dim).map(move |(i, j, k)| (i, j, k, self.get(i, j, k)))
    }

    fn prec(&self) -> u32 {
        self.entries[0].prec().0
    }

    pub fn scale(&self) -> Float {
        scalar::max_abs(self.prec(), &self.entries)
    }

    pub fn scaled(&self, factor: &Complex) -> Self {
        CubicForm {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| Complex::with_val(e.prec(), e * factor))
                .collect(),
        }
    }

    pub fn eval(&self, v: &[Complex]) -> Complex {
        let prec = self.prec();
        let mut acc = scalar::zero(prec);
        for (i, j, k, t) in self.entries() {
            if t.is_zero() {
                continue;
            }
            let term = Complex::with_val(prec, t * &v[i]) * &v[j] * &v[k];
            acc += term * multiplicity(i, j, k);
        }
        acc
    }

    /// The matrix `N_ij = sum_k T_ijk c_k`.
    pub fn contract(&self, c: &[Complex]) -> QuadraticForm {
        let prec = self.prec();
        let m = self.dim;
        let mut n = vec![vec![scalar::zero(prec); m]; m];
        for i in 0..m {
            for j in i..m {
                let mut acc = scalar::zero(prec);
                for (k, ck) in c.iter().enumerate() {
                    acc += self.get(i, j, k) * ck;
                }
                n[i][j] = acc.clone();
                n[j][i] = acc;
            }
        }
        QuadraticForm { matrix: n }
    }

    pub fn trilinear(&self, a: &[Complex], b: &[Complex], c: &[Complex]) -> Complex {
        self.contract(c).bilinear(a, b)
    }
}

fn sorted_triples(dim: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..dim).flat_map(move |i| (i..dim).flat_map(move |j| (j..dim).map(move |k| (i, j, k))))
}

fn prec_of(v: &[Complex]) -> u32 {
    v.first().map_or(scalar::MIN_PRECISION, |z| z.prec().0)
}

/// A linear subspace given by basis vectors, optionally translated by a base
/// point (an affine chart `base_point + sum u_a basis[a]`).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<Complex>>,
    base_point: Option<Vec<Complex>>,
}

impl LinearSubspace {
    /// Rejects bases whose column-normalized smallest singular value falls
    /// below `2^(-precision/4)`.
    pub fn new(
        ambient_dim: usize,
        basis: Vec<Vec<Complex>>,
        base_point: Option<Vec<Complex>>,
    ) -> Result<Self> {
        if basis.iter().any(|b| b.len() != ambient_dim)
            || base_point.as_ref().is_some_and(|p| p.len() != ambient_dim)
        {
            return Err(Error::InvalidInput(
                "subspace vectors must match the ambient dimension".into(),
            ));
        }
        if basis.len() > ambient_dim {
            return Err(Error::InvalidInput(
                "more basis vectors than ambient dimensions".into(),
            ));
        }
        if let Some(first) = basis.first() {
            let prec = prec_of(first);
            let threshold = scalar::pow2(prec, -((prec / 4) as i32));
            if linalg::min_singular_lower_bound(&basis) < threshold {
                return Err(Error::degenerate(
                    "subspace",
                    1,
                    "basis vectors are numerically dependent",
                ));
            }
        }
        Ok(LinearSubspace {
            ambient_dim,
            basis,
            base_point,
        })
    }

    pub fn full(dim: usize, prec: u32) -> Self {
        let basis = (0..dim).map(|i| unit(dim, i, prec)).collect();
        LinearSubspace {
            ambient_dim: dim,
            basis,
            base_point: None,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Complex>] {
        &self.basis
    }

    pub fn base_point(&self) -> Option<&[Complex]> {
        self.base_point.as_deref()
    }

    fn prec(&self) -> u32 {
        self.basis
            .first()
            .map_or(scalar::MIN_PRECISION, |b| prec_of(b))
    }

    /// `base_point + sum u_a basis[a]`.
    pub fn embed(&self, u: &[Complex]) -> Vec<Complex> {
        let prec = self.prec();
        let mut v = scalar::combine(u, &self.basis, self.ambient_dim, prec);
        if let Some(p) = &self.base_point {
            v = scalar::add_vec(&v, p);
        }
        v
    }

    /// The subspace `self.basis * inner.basis` of the ambient space, for
    /// `inner` living in the coordinates of `self`.
    pub fn compose(&self, inner: &LinearSubspace) -> Result<LinearSubspace> {
        assert_eq!(
            inner.ambient_dim,
            self.dim(),
            "inner subspace must live in our coordinates"
        );
        let prec = self.prec();
        let basis = inner
            .basis
            .iter()
            .map(|c| scalar::combine(c, &self.basis, self.ambient_dim, prec))
            .collect();
        let base_point = match (&self.base_point, &inner.base_point) {
            (None, None) => None,
            (outer, inner_pt) => {
                let mut p = match inner_pt {
                    Some(q) => scalar::combine(q, &self.basis, self.ambient_dim, prec),
                    None => vec![scalar::zero(prec); self.ambient_dim],
                };
                if let Some(o) = outer {
                    p = scalar::add_vec(&p, o);
                }
                Some(p)
            }
        };
        LinearSubspace::new(self.ambient_dim, basis, base_point)
    }

    /// Same span with a Hermitian-orthonormal basis.
    pub fn orthonormalized(&self) -> Result<LinearSubspace> {
        let prec = self.prec();
        let basis = linalg::orthonormalize(&self.basis, &scalar::pow2(prec, -((prec / 4) as i32)))
            .ok_or_else(|| {
                Error::degenerate("subspace", 1, "basis collapsed during orthonormalization")
            })?;
        Ok(LinearSubspace {
            ambient_dim: self.ambient_dim,
            basis,
            base_point: self.base_point.clone(),
        })
    }
}

pub fn unit(dim: usize, i: usize, prec: u32) -> Vec<Complex> {
    let mut v = vec![scalar::zero(prec); dim];
    v[i] = scalar::one(prec);
    v
}

/// Vector with the given `(index, coefficient)` entries.
fn sparse(dim: usize, entries: &[(usize, i32)], prec: u32) -> Vec<Complex> {
    let mut v = vec![scalar::zero(prec); dim];
    for &(i, c) in entries {
        v[i] += c;
    }
    v
}

fn scaled_vec(v: &[Complex], factor: i32) -> Vec<Complex> {
    v.iter()
        .map(|z| Complex::with_val(z.prec(), z * factor))
        .collect()
}

/// Restriction of a homogeneous form to a subspace: `form(S u)`.
///
/// Only the basis is used; a base point, if present, is ignored because the
/// restriction of a homogeneous form to an affine chart is inhomogeneous.
pub trait Restrict: Sized {
    fn restrict(&self, subspace: &LinearSubspace) -> Self;
}

impl Restrict for LinearForm {
    fn restrict(&self, s: &LinearSubspace) -> Self {
        assert_eq!(self.dim(), s.ambient_dim());
        LinearForm::new(s.basis().iter().map(|b| self.eval(b)).collect())
    }
}

impl Restrict for QuadraticForm {
    fn restrict(&self, s: &LinearSubspace) -> Self {
        assert_eq!(self.dim(), s.ambient_dim());
        let images: Vec<Vec<Complex>> = s.basis().iter().map(|b| self.apply(b)).collect();
        let k = s.dim();
        let mut m = vec![vec![scalar::zero(self.prec()); k]; k];
        for a in 0..k {
            for b in a..k {
                let v = scalar::dot(&s.basis()[a], &images[b]);
                m[a][b] = v.clone();
                m[b][a] = v;
            }
        }
        QuadraticForm { matrix: m }
    }
}

impl Restrict for CubicForm {
    fn restrict(&self, s: &LinearSubspace) -> Self {
        assert_eq!(self.dim(), s.ambient_dim());
        let k = s.dim();
        let prec = self.prec();
        let mut out = CubicForm::zero(k, prec);
        for c in 0..k {
            let slice = self.contract(&s.basis()[c]);
            let images: Vec<Vec<Complex>> =
                s.basis()[..=c].iter().map(|b| slice.apply(b)).collect();
            for a in 0..=c {
                for b in a..=c {
                    out.set(a, b, c, scalar::dot(&s.basis()[a], &images[b]));
                }
            }
        }
        out
    }
}

/// Null space of `l` through the origin, of dimension `m - 1`.
///
/// Basis vectors are `e_j - (l_j / l_p) e_p` for `j != p`, with `p` the
/// largest coefficient. `ZeroForm` if every coefficient is at most
/// `tol * reference_scale`.
pub fn tangent_hyperplane_scaled(
    l: &LinearForm,
    reference_scale: &Float,
) -> Result<LinearSubspace> {
    let m = l.dim();
    let prec = prec_of(l.coeffs());
    let (p, largest) = l.coeffs().iter().map(scalar::abs).enumerate().fold(
        (0, Float::new(prec)),
        |best, (i, a)| if a > best.1 { (i, a) } else { best },
    );
    let threshold = Float::with_val(prec, scalar::tolerance(prec) * reference_scale);
    if largest.is_zero() || largest <= threshold {
        return Err(Error::ZeroForm);
    }
    let pivot = &l.coeffs()[p];
    let basis = (0..m)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = unit(m, j, prec);
            v[p] = -Complex::with_val(prec, &l.coeffs()[j] / pivot);
            v
        })
        .collect();
    LinearSubspace::new(m, basis, None)
}

/// [`tangent_hyperplane_scaled`] with unit reference scale.
pub fn tangent_hyperplane(l: &LinearForm) -> Result<LinearSubspace> {
    tangent_hyperplane_scaled(l, &Float::with_val(prec_of(l.coeffs()), 1))
}

/// Common null space of several linear forms, `None` if they are dependent.
///
/// Each form is scaled to unit size first, so dependence is judged on
/// directions only.
pub fn common_null_space(forms: &[&LinearForm], prec: u32) -> Option<LinearSubspace> {
    let m = forms.first()?.dim();
    let mut rows = Vec::with_capacity(forms.len());
    for f in forms {
        let s = f.scale();
        if s.is_zero() {
            return None;
        }
        rows.push(
            f.coeffs()
                .iter()
                .map(|z| Complex::with_val(prec, z / &s))
                .collect::<Vec<_>>(),
        );
    }
    let basis = linalg::null_space(&rows, m, &scalar::pow2(prec, -((prec / 4) as i32)), prec)?;
    LinearSubspace::new(m, basis, None).ok()
}

/// Graded pieces `c + L + Q + C` of a polynomial map of degree <= 3.
#[derive(Clone, Debug)]
pub struct GradedParts {
    pub constant: Complex,
    pub linear: LinearForm,
    pub quadratic: Option<QuadraticForm>,
    pub cubic: Option<CubicForm>,
}

impl GradedParts {
    pub fn eval(&self, v: &[Complex]) -> Complex {
        let mut acc = Complex::with_val(self.constant.prec(), &self.constant);
        acc += self.linear.eval(v);
        if let Some(q) = &self.quadratic {
            acc += q.eval(v);
        }
        if let Some(c) = &self.cubic {
            acc += c.eval(v);
        }
        acc
    }

    /// Max coefficient magnitude over all pieces.
    pub fn scale(&self) -> Float {
        let mut s = scalar::abs(&self.constant);
        for part in [
            Some(self.linear.scale()),
            self.quadratic.as_ref().map(QuadraticForm::scale),
            self.cubic.as_ref().map(CubicForm::scale),
        ]
        .into_iter()
        .flatten()
        {
            if part > s {
                s = part;
            }
        }
        s
    }
}

/// Values at `v, -v, 2v, -2v`, enough to split a cubic map into parities.
struct Probe {
    plus: Complex,
    minus: Complex,
    plus2: Option<Complex>,
    minus2: Option<Complex>,
}

impl Probe {
    fn take<F: Fn(&[Complex]) -> Complex>(f: &F, v: &[Complex], doubled: bool) -> Self {
        let neg = scaled_vec(v, -1);
        let (plus2, minus2) = if doubled {
            (Some(f(&scaled_vec(v, 2))), Some(f(&scaled_vec(v, -2))))
        } else {
            (None, None)
        };
        Probe {
            plus: f(v),
            minus: f(&neg),
            plus2,
            minus2,
        }
    }

    /// `Q(v) = (f(v) + f(-v)) / 2 - f(0)`.
    fn even(&self, constant: &Complex) -> Complex {
        let prec = self.plus.prec().0;
        Complex::with_val(prec, &self.plus + &self.minus) / 2u32 - constant
    }

    /// `(L(v), C(v))` from `odd(v) = L + C` and `odd(2v) = 2L + 8C`.
    fn odd(&self) -> (Complex, Complex) {
        let prec = self.plus.prec().0;
        let o1 = Complex::with_val(prec, &self.plus - &self.minus) / 2u32;
        match (&self.plus2, &self.minus2) {
            (Some(p2), Some(m2)) => {
                let o2 = Complex::with_val(prec, p2 - m2) / 2u32;
                let cubic =
                    Complex::with_val(prec, &o2 - Complex::with_val(prec, &o1 * 2u32)) / 6u32;
                let linear = Complex::with_val(prec, &o1 - &cubic);
                (linear, cubic)
            }
            _ => (o1, scalar::zero(prec)),
        }
    }
}

/// Linear part of a black box of total degree `<= max_degree`.
pub fn linear_part<F: Fn(&[Complex]) -> Complex>(
    f: &F,
    m: usize,
    max_degree: usize,
    prec: u32,
) -> LinearForm {
    if max_degree <= 1 {
        let c = f(&vec![scalar::zero(prec); m]);
        return LinearForm::new((0..m).map(|i| f(&unit(m, i, prec)) - &c).collect());
    }
    LinearForm::new(
        (0..m)
            .map(|i| Probe::take(f, &unit(m, i, prec), max_degree >= 3).odd().0)
            .collect(),
    )
}

/// Quadratic part of a black box of total degree `<= 3`, from its even
/// part only.
pub fn quadratic_part<F: Fn(&[Complex]) -> Complex>(f: &F, m: usize, prec: u32) -> QuadraticForm {
    let c = f(&vec![scalar::zero(prec); m]);
    let q = |v: &[Complex]| Probe::take(f, v, false).even(&c);
    quadratic_from(&q, m, prec)
}

/// Cubic part of a black box of total degree `<= 3`.
pub fn cubic_part<F: Fn(&[Complex]) -> Complex>(f: &F, m: usize, prec: u32) -> CubicForm {
    let cubic = |v: &[Complex]| Probe::take(f, v, true).odd().1;
    cubic_from(&cubic, m, prec)
}

/// Symmetric matrix of a homogeneous quadratic map.
fn quadratic_from<Q: Fn(&[Complex]) -> Complex>(q: &Q, m: usize, prec: u32) -> QuadraticForm {
    let diag: Vec<Complex> = (0..m).map(|i| q(&unit(m, i, prec))).collect();
    let mut matrix = vec![vec![scalar::zero(prec); m]; m];
    for i in 0..m {
        matrix[i][i] = diag[i].clone();
        for j in i + 1..m {
            let both = q(&sparse(m, &[(i, 1), (j, 1)], prec));
            let off = (both - &diag[i] - &diag[j]) / 2u32;
            matrix[i][j] = off.clone();
            matrix[j][i] = off;
        }
    }
    QuadraticForm { matrix }
}

/// Symmetric tensor of a homogeneous cubic map.
fn cubic_from<C: Fn(&[Complex]) -> Complex>(c: &C, m: usize, prec: u32) -> CubicForm {
    let mut form = CubicForm::zero(m, prec);
    let diag: Vec<Complex> = (0..m).map(|i| c(&unit(m, i, prec))).collect();
    for (i, d) in diag.iter().enumerate() {
        form.set(i, i, i, d.clone());
    }
    for i in 0..m {
        for j in i + 1..m {
            // a = T_iii + T_jjj + 3 T_iij + 3 T_ijj, b = T_iii - T_jjj - 3 T_iij + 3 T_ijj
            let a = c(&sparse(m, &[(i, 1), (j, 1)], prec));
            let b = c(&sparse(m, &[(i, 1), (j, -1)], prec));
            let iij = Complex::with_val(prec, &a - &b) - Complex::with_val(prec, &diag[j] * 2u32);
            let ijj = Complex::with_val(prec, &a + &b) - Complex::with_val(prec, &diag[i] * 2u32);
            form.set(i, i, j, iij / 6u32);
            form.set(i, j, j, ijj / 6u32);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut rest = c(&sparse(m, &[(i, 1), (j, 1), (k, 1)], prec));
                for &l in &[i, j, k] {
                    rest -= &diag[l];
                    for &n in &[i, j, k] {
                        if n != l {
                            rest -= Complex::with_val(prec, form.get(l, l, n) * 3u32);
                        }
                    }
                }
                form.set(i, j, k, rest / 6u32);
            }
        }
    }
    form
}

/// Graded components of a black-box polynomial map of total degree
/// `<= max_degree` (1, 2 or 3), checked by reconstruction at random points.
pub fn extract_forms<F: Fn(&[Complex]) -> Complex>(
    f: &F,
    m: usize,
    max_degree: usize,
    prec: u32,
) -> Result<GradedParts> {
    if !(1..=3).contains(&max_degree) {
        return Err(Error::InvalidInput(format!(
            "max_degree must be 1, 2 or 3, got {max_degree}"
        )));
    }
    let constant = f(&vec![scalar::zero(prec); m]);
    let parts = match max_degree {
        1 => GradedParts {
            linear: linear_part(f, m, 1, prec),
            constant,
            quadratic: None,
            cubic: None,
        },
        _ => {
            let doubled = max_degree == 3;
            let probes: Vec<Probe> = (0..m)
                .map(|i| Probe::take(f, &unit(m, i, prec), doubled))
                .collect();
            let linear = LinearForm::new(probes.iter().map(|p| p.odd().0).collect());
            let q = |v: &[Complex]| Probe::take(f, v, false).even(&constant);
            let quadratic = quadratic_from(&q, m, prec);
            let cubic = doubled.then(|| cubic_part(f, m, prec));
            GradedParts {
                constant,
                linear,
                quadratic: Some(quadratic),
                cubic,
            }
        }
    };

    let mut sampler = Sampler::new(CHECK_SEED ^ m as u64, prec);
    let scale = parts.scale();
    let tol = scalar::tolerance(prec) * Float::with_val(prec, 8 * m.pow(3).max(1) as u64);
    for _ in 0..CHECK_POINTS {
        let v = sampler.vector(m);
        let direct = f(&v);
        let rebuilt = parts.eval(&v);
        let residual = scalar::abs(&Complex::with_val(prec, &direct - &rebuilt));
        let mut reference = scalar::abs(&direct);
        if scale > reference {
            reference = scale.clone();
        }
        if residual > Float::with_val(prec, &tol * &reference) {
            return Err(Error::DegreeMismatch {
                declared: max_degree,
                residual: scalar::ratio(&residual, &reference),
            });
        }
    }
    Ok(parts)
}
