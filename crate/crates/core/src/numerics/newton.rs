//! Newton's identities between coefficients and root power sums.

use super::poly::UniPoly;
use super::scalar::{self, Complex};

/// Power sums `p_1, ..., p_{k_max}` of the roots of a monic polynomial,
/// computed from coefficients alone.
///
/// With `p = x^n + a_1 x^(n-1) + ... + a_n` (and `a_k = 0` for `k > n`):
/// `p_k = -k a_k - sum_{i=1}^{k-1} a_i p_{k-i}`.
pub fn power_sums(p: &UniPoly, k_max: usize) -> Vec<Complex> {
    debug_assert!(p.is_monic(), "power sums need a monic polynomial");
    let n = p.degree();
    let prec = p.prec();
    // a[i] = coefficient of x^(n-i)
    let a: Vec<&Complex> = (0..=n).map(|i| p.coeff(n - i)).collect();
    let mut sums: Vec<Complex> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = if k <= n {
            Complex::with_val(prec, a[k] * k as u32)
        } else {
            scalar::zero(prec)
        };
        for i in 1..k.min(n + 1) {
            acc += a[i] * &sums[k - i - 1];
        }
        acc = -acc;
        sums.push(acc);
    }
    sums
}

/// Leading coefficients `a_1, ..., a_k` (of `x^(n-1), ..., x^(n-k)`) of the
/// monic polynomial with root power sums `sums`, for any degree `n >= k`.
///
/// Inverts [`power_sums`]: `a_k = -(p_k + sum_{i=1}^{k-1} a_i p_{k-i}) / k`.
pub fn leading_coeffs_from_power_sums(sums: &[Complex], k: usize) -> Vec<Complex> {
    assert!(sums.len() >= k, "need at least k power sums");
    let prec = sums.first().map_or(scalar::MIN_PRECISION, |s| s.prec().0);
    let mut a: Vec<Complex> = Vec::with_capacity(k);
    for m in 1..=k {
        let mut acc = Complex::with_val(prec, &sums[m - 1]);
        for i in 1..m {
            acc += &a[i - 1] * &sums[m - i - 1];
        }
        acc /= m as u32;
        a.push(-acc);
    }
    a
}

/// Monic degree-`n` polynomial whose root power sums are `sums[0..n]`.
pub fn coeffs_from_power_sums(sums: &[Complex], n: usize) -> UniPoly {
    let prec = sums.first().map_or(scalar::MIN_PRECISION, |s| s.prec().0);
    let mut coeffs = leading_coeffs_from_power_sums(sums, n);
    coeffs.reverse();
    coeffs.push(scalar::one(prec));
    UniPoly::new(coeffs)
}
