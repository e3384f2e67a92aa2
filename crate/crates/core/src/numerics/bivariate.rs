//! Dense bivariate polynomials, interpolation on roots of unity, and
//! elimination of the second variable by resultants.

use super::linalg;
use super::poly::UniPoly;
use super::resultant::sylvester_matrix;
use rug::ops::Pow;

use super::scalar::{self, Complex, Float};
use crate::error::{Error, Result};

/// `coeffs[i][j]` is the coefficient of `u^i v^j`; total degree `<= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    degree: usize,
    coeffs: Vec<Vec<Complex>>,
}

/// The `count` points `exp(2 pi i k / count)`.
pub fn unit_roots(count: usize, prec: u32) -> Vec<Complex> {
    (0..count as u32)
        .map(|k| Complex::with_val(prec, Complex::root_of_unity(count as u32, k)))
        .collect()
}

/// Coefficients `c_0..c_degree` of a univariate polynomial map, recovered
/// from its values on the `degree + 1` roots of unity.
pub fn fit_univariate(eval: impl Fn(&Complex) -> Complex, degree: usize, prec: u32) -> UniPoly {
    let count = degree + 1;
    let nodes = unit_roots(count, prec);
    let values: Vec<Complex> = nodes.iter().map(&eval).collect();
    UniPoly::new(inverse_dft(&values, &nodes, prec))
}

/// `c_k = (1/N) sum_j values[j] * nodes[j]^(-k)`.
fn inverse_dft(values: &[Complex], nodes: &[Complex], prec: u32) -> Vec<Complex> {
    let count = values.len();
    (0..count)
        .map(|k| {
            let mut acc = scalar::zero(prec);
            for (j, v) in values.iter().enumerate() {
                // nodes[j]^(-k) = nodes[(count - j*k mod count) mod count]
                let idx = (count - (j * k) % count) % count;
                acc += v * &nodes[idx];
            }
            acc / count as u32
        })
        .collect()
}

impl BiPoly {
    pub fn new(degree: usize, coeffs: Vec<Vec<Complex>>) -> Self {
        assert_eq!(coeffs.len(), degree + 1);
        assert!(coeffs.iter().all(|row| row.len() == degree + 1));
        BiPoly { degree, coeffs }
    }

    /// Interpolates a bivariate polynomial map of total degree `<= degree`
    /// on the `(degree+1)^2` grid of roots of unity. Fails with
    /// `DegreeMismatch` if mass appears above the declared total degree.
    pub fn fit(
        eval: impl Fn(&Complex, &Complex) -> Complex,
        degree: usize,
        prec: u32,
    ) -> Result<Self> {
        let count = degree + 1;
        let nodes = unit_roots(count, prec);
        let grid: Vec<Vec<Complex>> = nodes
            .iter()
            .map(|u| nodes.iter().map(|v| eval(u, v)).collect())
            .collect();
        // transform along v, then along u
        let along_v: Vec<Vec<Complex>> = grid
            .iter()
            .map(|row| inverse_dft(row, &nodes, prec))
            .collect();
        let mut coeffs = vec![vec![scalar::zero(prec); count]; count];
        for j in 0..count {
            let column: Vec<Complex> = along_v.iter().map(|row| row[j].clone()).collect();
            for (i, c) in inverse_dft(&column, &nodes, prec).into_iter().enumerate() {
                coeffs[i][j] = c;
            }
        }
        let scale = scalar::max_abs(prec, coeffs.iter().flatten());
        let bound =
            Float::with_val(prec, &scale * scalar::tolerance(prec)) * (8 * count * count) as u32;
        let mut excess = Float::new(prec);
        for (i, row) in coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if i + j > degree {
                    let m = scalar::abs(c);
                    if m > excess {
                        excess = m;
                    }
                    *c = scalar::zero(prec);
                }
            }
        }
        if excess > bound {
            return Err(Error::DegreeMismatch {
                declared: degree,
                residual: scalar::ratio(&excess, &scale),
            });
        }
        Ok(BiPoly { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `f(rho u, rho v)`.
    pub fn with_scaled_arguments(&self, rho: &Float) -> BiPoly {
        let prec = self.prec();
        let mut coeffs = self.coeffs.clone();
        for (i, row) in coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if i + j <= self.degree {
                    *c *= Float::with_val(prec, rho.pow((i + j) as u32));
                }
            }
        }
        BiPoly {
            degree: self.degree,
            coeffs,
        }
    }

    /// Largest magnitude among the coefficients of total degree `k`.
    pub fn homogeneous_scale(&self, k: usize) -> Float {
        scalar::max_abs(
            self.prec(),
            (0..=k.min(self.degree)).map(|i| &self.coeffs[i][k - i]),
        )
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Complex {
        &self.coeffs[i][j]
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0][0].prec().0
    }

    pub fn scale(&self) -> Float {
        scalar::max_abs(self.prec(), self.coeffs.iter().flatten())
    }

    pub fn eval(&self, u: &Complex, v: &Complex) -> Complex {
        self.in_v_at(u).eval(v)
    }

    /// `sum |c_ij| |u|^i |v|^j`.
    pub fn eval_abs(&self, u: &Complex, v: &Complex) -> Float {
        let prec = self.prec();
        let (au, av) = (scalar::abs(u), scalar::abs(v));
        let mut acc = Float::new(prec);
        for (i, row) in self.coeffs.iter().enumerate() {
            let ui = Float::with_val(prec, (&au).pow(i as u32));
            for (j, c) in row.iter().enumerate() {
                let vj = Float::with_val(prec, (&av).pow(j as u32));
                acc += scalar::abs(c) * ui.clone() * vj;
            }
        }
        acc
    }

    /// Value and the two partial derivatives at `(u, v)`.
    pub fn eval_with_gradient(&self, u: &Complex, v: &Complex) -> (Complex, Complex, Complex) {
        let prec = self.prec();
        let mut val = scalar::zero(prec);
        let mut du = scalar::zero(prec);
        let mut dv = scalar::zero(prec);
        let upow = powers(u, self.degree, prec);
        let vpow = powers(v, self.degree, prec);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                val += Complex::with_val(prec, c * &upow[i]) * &vpow[j];
                if i > 0 {
                    du += Complex::with_val(prec, c * &upow[i - 1]) * &vpow[j] * i as u32;
                }
                if j > 0 {
                    dv += Complex::with_val(prec, c * &upow[i]) * &vpow[j - 1] * j as u32;
                }
            }
        }
        (val, du, dv)
    }

    /// The univariate polynomial in `v` obtained by fixing `u`, with formal
    /// degree equal to the total degree.
    pub fn in_v_at(&self, u: &Complex) -> UniPoly {
        let prec = self.prec();
        let mut out = vec![scalar::zero(prec); self.degree + 1];
        for row in self.coeffs.iter().rev() {
            for (o, c) in out.iter_mut().zip(row) {
                *o *= u;
                *o += c;
            }
        }
        UniPoly::new(out)
    }
}

fn powers(x: &Complex, n: usize, prec: u32) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(scalar::one(prec));
    for k in 1..=n {
        let next = Complex::with_val(prec, &out[k - 1] * x);
        out.push(next);
    }
    out
}

/// `Res_v(f, g)` as a polynomial in `u` of formal degree `deg f * deg g`,
/// by evaluating Sylvester determinants on roots of unity and
/// interpolating. The leading coefficients in `v` are the constants
/// `f[0][deg f]` and `g[0][deg g]`.
pub fn resultant_in_v(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let prec = f.prec().max(g.prec());
    let count = f.degree() * g.degree() + 1;
    let nodes = unit_roots(count, prec);
    let values: Vec<Complex> = nodes
        .iter()
        .map(|u| linalg::determinant(sylvester_matrix(&f.in_v_at(u), &g.in_v_at(u)), prec))
        .collect();
    UniPoly::new(inverse_dft(&values, &nodes, prec))
}

/// Newton refinement of a common zero of `f` and `g`; stops after
/// `max_steps` or once a step no longer shrinks the residual.
pub fn polish_common_zero(
    f: &BiPoly,
    g: &BiPoly,
    u: &Complex,
    v: &Complex,
    max_steps: usize,
) -> (Complex, Complex) {
    let prec = f.prec();
    let residual = |u: &Complex, v: &Complex| -> Float {
        let a = scalar::ratio(&scalar::abs(&f.eval(u, v)), &f.eval_abs(u, v));
        let b = scalar::ratio(&scalar::abs(&g.eval(u, v)), &g.eval_abs(u, v));
        Float::with_val(prec, a.max(b))
    };
    let (mut u, mut v) = (u.clone(), v.clone());
    let mut best = residual(&u, &v);
    for _ in 0..max_steps {
        if best.is_zero() {
            break;
        }
        let (fv, fu_, fv_) = f.eval_with_gradient(&u, &v);
        let (gv, gu_, gv_) = g.eval_with_gradient(&u, &v);
        let Some(step) = linalg::solve(vec![vec![fu_, fv_], vec![gu_, gv_]], vec![fv, gv], prec)
        else {
            break;
        };
        let nu = Complex::with_val(prec, &u - &step[0]);
        let nv = Complex::with_val(prec, &v - &step[1]);
        let r = residual(&nu, &nv);
        if r >= best {
            break;
        }
        u = nu;
        v = nv;
        best = r;
    }
    (u, v)
}
