//! Reference computations for the acceptance checks, written against raw
//! `rug` types only: Durand-Kerner roots, product expansion, Horner.

#![allow(dead_code)]

use rug::ops::Pow;
use rug::{Complex, Float};

pub fn c(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn max_abs(zs: &[Complex]) -> f64 {
    zs.iter().map(|z| abs(z).to_f64()).fold(0.0, f64::max)
}

/// `p(z)` with coefficients from the constant term up.
pub fn horner(p: &[Complex], z: &Complex) -> Complex {
    let prec = z.prec().0;
    let mut acc = Complex::new(prec);
    for a in p.iter().rev() {
        acc = Complex::with_val(prec, &acc * z) + a;
    }
    acc
}

/// `|p(z)| / sum |p_i| |z|^i`.
pub fn relative_residual(p: &[Complex], z: &Complex) -> f64 {
    let prec = z.prec().0;
    let r = abs(z);
    let mut den = Float::new(prec);
    let mut pow = Float::with_val(prec, 1);
    for a in p {
        den += Float::with_val(prec, abs(a) * &pow);
        pow *= &r;
    }
    let num = abs(&horner(p, z));
    if den.is_zero() {
        return if num.is_zero() { 0.0 } else { f64::INFINITY };
    }
    Float::with_val(prec, num / den).to_f64()
}

/// Monic polynomial with the given roots, constant term first.
pub fn expand(roots: &[Complex]) -> Vec<Complex> {
    let prec = roots.first().map_or(64, |z| z.prec().0);
    let mut p = vec![Complex::with_val(prec, 1)];
    for r in roots {
        let mut next = vec![Complex::new(prec); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= Complex::with_val(prec, a * r);
        }
        p = next;
    }
    p
}

/// All roots by Durand-Kerner iteration followed by Newton polishing.
pub fn durand_kerner(p: &[Complex], prec: u32) -> Vec<Complex> {
    let n = p.len() - 1;
    let lead = Complex::with_val(prec, &p[n]);
    let monic: Vec<Complex> = p
        .iter()
        .map(|a| Complex::with_val(prec, a / &lead))
        .collect();
    // Fujiwara-type bound for the starting circle
    let radius = (0..n)
        .map(|k| abs(&monic[k]).to_f64().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    let seed = c(prec, 0.4, 0.9);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| Complex::with_val(prec, (&seed).pow(k as u32)) * radius)
        .collect();
    let stop = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16));
    for _ in 0..2000 {
        let mut worst = Float::new(prec);
        for i in 0..n {
            let mut den = Complex::with_val(prec, 1);
            for j in 0..n {
                if i != j {
                    den *= Complex::with_val(prec, &z[i] - &z[j]);
                }
            }
            let step = Complex::with_val(prec, horner(&monic, &z[i]) / den);
            let size = Float::with_val(prec, abs(&step) / (abs(&z[i]) + 1u32));
            if size > worst {
                worst = size;
            }
            z[i] -= step;
        }
        if worst < stop {
            break;
        }
    }
    let deriv: Vec<Complex> = (1..=n)
        .map(|k| Complex::with_val(prec, &monic[k] * k as u32))
        .collect();
    for x in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&deriv, x);
            if d.is_zero() {
                break;
            }
            let step = Complex::with_val(prec, horner(&monic, x) / d);
            *x -= step;
        }
    }
    z
}

/// `g(x) = t_0 + t_1 x + ... + t_{n-2} x^{n-2} + x^{n-1}`.
pub fn apply_map(t: &[Complex], x: &Complex) -> Complex {
    let prec = x.prec().0;
    let mut g: Vec<Complex> = t.to_vec();
    g.push(Complex::with_val(prec, 1));
    horner(&g, x)
}

/// Greedy nearest matching; largest distance relative to `max(1, |a|)`.
pub fn match_distance(a: &[Complex], b: &[Complex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, abs(&Complex::with_val(x.prec().0, x - y)).to_f64()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        used[j] = true;
        worst = worst.max(d / abs(x).to_f64().max(1.0));
    }
    worst
}

/// `max_i |C_i| / R^i` for `i = 1..=count`, where `C_i` is the coefficient
/// of `y^(n-i)` in the monic `p` (constant first) and `R = max |root|`.
pub fn relative_leading(p: &[Complex], radius: f64, count: usize) -> f64 {
    let n = p.len() - 1;
    (1..=count)
        .map(|i| abs(&p[n - i]).to_f64() / radius.powi(i as i32))
        .fold(0.0, f64::max)
}

/// Entries of `B^T Q B` for a symmetric `Q` and basis columns `B`.
pub fn restrict_quadratic(q: &[Vec<Complex>], basis: &[Vec<Complex>]) -> Vec<Complex> {
    let prec = q[0][0].prec().0;
    let m = q.len();
    let mut out = Vec::new();
    for a in basis {
        let qa: Vec<Complex> = (0..m)
            .map(|i| {
                let mut s = Complex::new(prec);
                for j in 0..m {
                    s += Complex::with_val(prec, &q[i][j] * &a[j]);
                }
                s
            })
            .collect();
        for b in basis {
            let mut s = Complex::new(prec);
            for i in 0..m {
                s += Complex::with_val(prec, &qa[i] * &b[i]);
            }
            out.push(s);
        }
    }
    out
}

/// Dense symmetric tensor `T[i][j][k]`.
pub type Tensor = Vec<Vec<Vec<Complex>>>;

pub fn trilinear(t: &Tensor, a: &[Complex], b: &[Complex], cc: &[Complex]) -> Complex {
    let prec = t[0][0][0].prec().0;
    let m = t.len();
    let mut s = Complex::new(prec);
    for i in 0..m {
        for j in 0..m {
            let ab = Complex::with_val(prec, &a[i] * &b[j]);
            for k in 0..m {
                s += Complex::with_val(prec, &t[i][j][k] * &ab) * &cc[k];
            }
        }
    }
    s
}

/// Coefficients of `s^3, s^2 t, s t^2, t^3` in `C(s a + t b)`.
pub fn binary_cubic(t: &Tensor, a: &[Complex], b: &[Complex]) -> [Complex; 4] {
    [
        trilinear(t, a, a, a),
        trilinear(t, a, a, b) * 3u32,
        trilinear(t, a, b, b) * 3u32,
        trilinear(t, b, b, b),
    ]
}
