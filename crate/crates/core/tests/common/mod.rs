//! Shared helpers: strategies for complex inputs and oracles built from
//! known roots.

#![allow(dead_code)]

use proptest::prelude::*;
use resolvent_core::numerics::scalar::{self, Complex};

pub const P: u32 = 256;

pub fn tol() -> f64 {
    2f64.powi(-128)
}

pub fn c(re: f64, im: f64) -> Complex {
    Complex::with_val(P, (re, im))
}

pub fn abs(z: &Complex) -> f64 {
    scalar::abs(z).to_f64()
}

pub fn complex(bound: f64) -> impl Strategy<Value = Complex> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| c(re, im))
}

pub fn complexes(
    bound: f64,
    len: impl Into<prop::collection::SizeRange>,
) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec(complex(bound), len)
}

/// Roots kept at least `gap` apart, so the polynomials are well separated.
pub fn separated_roots(
    n: std::ops::RangeInclusive<usize>,
    gap: f64,
) -> impl Strategy<Value = Vec<Complex>> {
    complexes(2.0, n).prop_filter("roots too close", move |rs| {
        rs.iter().enumerate().all(|(i, a)| {
            rs.iter()
                .skip(i + 1)
                .all(|b| abs(&Complex::with_val(P, a - b)) > gap)
        })
    })
}

/// `prod (x - r_i)`, constant term first.
pub fn expand(roots: &[Complex]) -> Vec<Complex> {
    let mut p = vec![Complex::with_val(P, 1)];
    for r in roots {
        let mut next = vec![Complex::new(P); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= Complex::with_val(P, a * r);
        }
        p = next;
    }
    p
}

pub fn horner(p: &[Complex], z: &Complex) -> Complex {
    let mut acc = Complex::new(P);
    for a in p.iter().rev() {
        acc = Complex::with_val(P, &acc * z) + a;
    }
    acc
}

/// Largest `|a_i - b_i|` relative to the larger coefficient scale.
pub fn coeff_gap(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = a
        .iter()
        .chain(b)
        .map(abs)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    a.iter()
        .zip(b)
        .map(|(x, y)| abs(&Complex::with_val(P, x - y)))
        .fold(0.0, f64::max)
        / scale
}

/// Greedy nearest matching, largest distance.
pub fn match_distance(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, abs(&Complex::with_val(P, x - y))))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
