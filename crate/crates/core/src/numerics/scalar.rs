//! Complex scalars at a caller-chosen binary precision.
//!
//! All arithmetic is MPFR round-to-nearest, so results are bit-reproducible
//! for a fixed precision.

pub use rug::{Complex, Float};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

pub fn check_precision(precision_bits: u32) -> Result<()> {
    if precision_bits < MIN_PRECISION {
        return Err(Error::InvalidInput(format!(
            "precision_bits must be at least {MIN_PRECISION}, got {precision_bits}"
        )));
    }
    Ok(())
}

pub fn zero(prec: u32) -> Complex {
    Complex::new(prec)
}

pub fn one(prec: u32) -> Complex {
    Complex::with_val(prec, 1)
}

pub fn from_i64(prec: u32, value: i64) -> Complex {
    Complex::with_val(prec, value)
}

pub fn from_f64(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `2^exp` as a float of the given precision.
pub fn pow2(prec: u32, exp: i32) -> Float {
    let one = Float::with_val(prec, 1);
    if exp >= 0 {
        one << exp as u32
    } else {
        one >> exp.unsigned_abs()
    }
}

/// Working tolerance `2^(-precision/2)`, relative to a scale.
pub fn tolerance(prec: u32) -> Float {
    pow2(prec, -((prec / 2) as i32))
}

pub fn max_abs<'a>(prec: u32, values: impl IntoIterator<Item = &'a Complex>) -> Float {
    values
        .into_iter()
        .map(abs)
        .fold(Float::new(prec), |acc, v| if v > acc { v } else { acc })
}

/// `num / den` as an `f64`, with `0/0 = 0` and `x/0 = inf`.
///
/// Ratios of arbitrary-precision magnitudes stay in `f64` range even when
/// the magnitudes themselves do not.
pub fn ratio(num: &Float, den: &Float) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    if den.is_zero() {
        return f64::INFINITY;
    }
    Float::with_val(num.prec().max(den.prec()), num / den).to_f64()
}

pub fn to_prec(z: &Complex, prec: u32) -> Complex {
    Complex::with_val(prec, z)
}

/// Squared Hermitian norm `sum |v_i|^2`.
pub fn norm_sqr(v: &[Complex]) -> Float {
    let prec = v.first().map_or(MIN_PRECISION, |z| z.prec().0);
    let mut acc = Float::new(prec);
    for z in v {
        acc += Float::with_val(prec, z.norm_ref());
    }
    acc
}

pub fn norm(v: &[Complex]) -> Float {
    norm_sqr(v).sqrt()
}

/// Plain (bilinear, not Hermitian) dot product.
pub fn dot(a: &[Complex], b: &[Complex]) -> Complex {
    debug_assert_eq!(a.len(), b.len());
    let prec = a.first().map_or(MIN_PRECISION, |z| z.prec().0);
    let mut acc = zero(prec);
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// `sum_i coeffs[i] * vectors[i]`; all vectors share a length.
pub fn combine(
    coeffs: &[Complex],
    vectors: &[Vec<Complex>],
    len: usize,
    prec: u32,
) -> Vec<Complex> {
    let mut out = vec![zero(prec); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn add_vec(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    a.iter()
        .zip(b)
        .map(|(x, y)| Complex::with_val(x.prec().0, x + y))
        .collect()
}
