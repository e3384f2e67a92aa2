//! Acceptance suite: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary is always printed;
//! exits nonzero if any criterion fails.

mod oracle;

use std::fs;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Complex;
use serde_json::Value;

use resolvent_core::conegeom::{lemma1_subspace, lemma2_plane};
use resolvent_core::forms::{CubicForm, QuadraticForm};
use resolvent_core::io::{poly_to_json, report_to_json};
use resolvent_core::numerics::{resultant, UniPoly};
use resolvent_core::pipeline::{reduce_bring, reduce_theorem1, verify_report, ReductionReport};
use resolvent_core::tschirnhaus::{transform, TschirnhausMap};

use oracle::{
    abs, apply_map, durand_kerner, expand, match_distance, max_abs, relative_leading,
    relative_residual,
};

const P: u32 = 256;
const ACCEPT: f64 = 1e-30;
const SEED: u64 = 42;
const ORACLE_P: u32 = 768;

fn tol() -> f64 {
    2f64.powi(-128)
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex(r: &mut ChaCha8Rng) -> Complex {
    Complex::with_val(P, (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

fn integer_monic(seed: u64, n: usize) -> UniPoly {
    let mut r = rng(seed);
    let mut c: Vec<i64> = (0..n).map(|_| r.gen_range(-10..=10)).collect();
    c.push(1);
    UniPoly::from_i64(P, &c)
}

fn complex_monic(seed: u64, n: usize) -> UniPoly {
    let mut r = rng(seed);
    let mut c: Vec<Complex> = (0..n).map(|_| random_complex(&mut r) * 10u32).collect();
    c.push(Complex::with_val(P, 1));
    UniPoly::new(c)
}

/// Oracle check of a reduction report: recomputes the transformed roots
/// from scratch and measures everything against them.
struct RootAudit {
    vanish: f64,
    constant_is_one: bool,
    shape: f64,
    root_residual: f64,
    correspondence: f64,
}

fn audit(report: &ReductionReport, killed: usize) -> RootAudit {
    let f = report.input.coeffs().to_vec();
    let xs = durand_kerner(&f, P);
    let t = report.trace.final_map.t();
    let ys: Vec<Complex> = xs.iter().map(|x| apply_map(t, x)).collect();
    let vanish = relative_leading(&expand(&ys), max_abs(&ys), killed);

    let out = report.trace.final_poly.coeffs().to_vec();
    let n = out.len() - 1;
    let constant_is_one = out[0] == Complex::with_val(P, 1) && out[n] == Complex::with_val(P, 1);
    let c = &report.trace.scale_factor;
    let zs: Vec<Complex> = ys.iter().map(|y| Complex::with_val(P, y / c)).collect();
    let shape = relative_leading(&out, max_abs(&zs), killed);
    let root_residual = zs
        .iter()
        .map(|z| relative_residual(&out, z))
        .fold(0.0, f64::max);
    let correspondence = match_distance(&zs, &durand_kerner(&out, P));
    RootAudit {
        vanish,
        constant_is_one,
        shape,
        root_residual,
        correspondence,
    }
}

fn criterion1(reports: &[(u64, Result<ReductionReport, String>)]) -> Verdict {
    let mut worst = [0f64; 4];
    let mut failures = Vec::new();
    for (seed, r) in reports {
        let report = match r {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("poly {seed}: {e}"));
                continue;
            }
        };
        let a = audit(report, 5);
        for (w, v) in worst
            .iter_mut()
            .zip([a.vanish, a.shape, a.root_residual, a.correspondence])
        {
            *w = w.max(v);
        }
        let ok = a.vanish <= ACCEPT
            && a.shape <= ACCEPT
            && a.constant_is_one
            && report.parameter_count == 15
            && report.trace.final_poly.degree() == 21
            && a.root_residual <= ACCEPT
            && a.correspondence <= ACCEPT;
        if !ok {
            failures.push(format!("poly {seed}: audit failed"));
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{} of {} degree-21 inputs; max |C_1..C_5|/R^k {:.1e}, output shape {:.1e}, root residual {:.1e}, root match {:.1e}{}",
            reports.len() - failures.len(),
            reports.len(),
            worst[0],
            worst[1],
            worst[2],
            worst[3],
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    )
}

fn criterion2(reports: &[(u64, Result<ReductionReport, String>)]) -> Verdict {
    let mut pre = std::collections::BTreeMap::<usize, usize>::new();
    let mut finals = Vec::new();
    let mut ok = !reports.is_empty();
    for (_, r) in reports {
        let Ok(report) = r else {
            ok = false;
            continue;
        };
        let degrees: Vec<(String, usize)> = report
            .trace
            .stages
            .iter()
            .filter_map(|s| s.auxiliary_degree.map(|d| (s.name.clone(), d)))
            .collect();
        let Some(((last_name, last), before)) = degrees.split_last() else {
            ok = false;
            continue;
        };
        ok &= last_name == "final-intersection" && *last <= 20;
        ok &= degrees
            .iter()
            .filter(|(n, _)| n == "final-intersection")
            .count()
            == 1;
        for (_, d) in before {
            ok &= [2, 3, 4, 6].contains(d);
            *pre.entry(*d).or_default() += 1;
        }
        finals.push(*last);
    }
    verdict(
        ok,
        format!("pre-final degree counts {pre:?}, final degrees {finals:?}"),
    )
}

fn random_symmetric(r: &mut ChaCha8Rng, m: usize) -> Vec<Vec<Complex>> {
    let mut q = vec![vec![Complex::new(P); m]; m];
    for i in 0..m {
        for j in i..m {
            let z = random_complex(r);
            q[i][j] = z.clone();
            q[j][i] = z;
        }
    }
    q
}

/// `A^T M A` with `M` zero on its leading `k x k` block: isotropic on
/// `A^{-1} span(e_1..e_k)`.
fn planted_symmetric(
    r: &mut ChaCha8Rng,
    m: usize,
    k: usize,
    a: &[Vec<Complex>],
) -> Vec<Vec<Complex>> {
    let mut mm = random_symmetric(r, m);
    for row in mm.iter_mut().take(k) {
        for z in row.iter_mut().take(k) {
            *z = Complex::new(P);
        }
    }
    let mut out = vec![vec![Complex::new(P); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut s = Complex::new(P);
            for p in 0..m {
                for q in 0..m {
                    s += Complex::with_val(P, &a[p][i] * &mm[p][q]) * &a[q][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Largest deviation of the basis Gram matrix from the identity.
fn gram_defect(basis: &[Vec<Complex>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let mut s = Complex::new(P);
            for (x, y) in a.iter().zip(b) {
                s += Complex::with_val(P, x.conj_ref()) * y;
            }
            if i == j {
                s -= 1u32;
            }
            worst = worst.max(abs(&s).to_f64());
        }
    }
    worst
}

fn lemma1_case(
    q1: Vec<Vec<Complex>>,
    q2: Vec<Vec<Complex>>,
    k: usize,
    seed: u64,
) -> Result<f64, String> {
    let m = 3 * k;
    let (s, stages) = lemma1_subspace(
        &QuadraticForm::new(q1.clone()),
        &QuadraticForm::new(q2.clone()),
        k,
        seed,
    )
    .map_err(|e| e.to_string())?;
    if s.dim() != k || gram_defect(s.basis()) > 1e-60 {
        return Err(format!("k={k}: bad basis"));
    }
    let aux: Vec<usize> = stages.iter().filter_map(|s| s.auxiliary_degree).collect();
    if aux.len() != k || aux.iter().any(|d| *d > 4) {
        return Err(format!("k={k}: auxiliary degrees {aux:?}"));
    }
    let bound = 32.0 * (m * m) as f64 * tol();
    let mut worst: f64 = 0.0;
    for q in [&q1, &q2] {
        let scale = q
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| abs(z).to_f64())
            .fold(0.0, f64::max);
        let rel = max_abs(&oracle::restrict_quadratic(q, s.basis())) / scale;
        worst = worst.max(rel / bound);
    }
    Ok(worst)
}

fn criterion3() -> Verdict {
    let mut cases = Vec::new();
    for k in 1..=5usize {
        for i in 0..50u64 {
            cases.push((false, k, 1000 * k as u64 + i));
        }
    }
    for i in 0..50u64 {
        cases.push((true, 1 + (i as usize % 5), 90_000 + i));
    }
    let results: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|&(planted, k, seed)| {
            let m = 3 * k;
            let mut r = rng(seed);
            let (q1, q2) = if planted {
                let a = (0..m)
                    .map(|_| (0..m).map(|_| random_complex(&mut r)).collect())
                    .collect::<Vec<Vec<_>>>();
                (
                    planted_symmetric(&mut r, m, k, &a),
                    planted_symmetric(&mut r, m, k, &a),
                )
            } else {
                (random_symmetric(&mut r, m), random_symmetric(&mut r, m))
            };
            lemma1_case(q1, q2, k, seed)
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let worst = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .cloned()
        .fold(0.0, f64::max);
    verdict(
        failures.is_empty() && worst <= 1.0,
        format!(
            "{} random + 50 planted pairs, k = 1..5; worst restricted entry {:.1e} of the 32 m^2 2^-128 bound{}",
            250,
            worst,
            failures.first().map_or(String::new(), |f| format!("; {} failures, first: {f}", failures.len()))
        ),
    )
}

fn dense(c: &CubicForm) -> oracle::Tensor {
    let m = c.dim();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| c.get(i, j, k).clone()).collect())
                .collect()
        })
        .collect()
}

/// Random cubic minus the cubic `x -> C(L x)` with `L` the projection onto
/// `span(p, q)` along a random complement; vanishes on that plane.
fn planted_cubic(r: &mut ChaCha8Rng) -> CubicForm {
    let m = 5;
    let base = CubicForm::from_fn(m, P, |_, _, _| random_complex(r));
    let t = dense(&base);
    let p: Vec<Complex> = (0..m).map(|_| random_complex(r)).collect();
    let q: Vec<Complex> = (0..m).map(|_| random_complex(r)).collect();
    let l0: Vec<Complex> = (0..m).map(|_| random_complex(r)).collect();
    let m0: Vec<Complex> = (0..m).map(|_| random_complex(r)).collect();
    let dot = |a: &[Complex], b: &[Complex]| {
        a.iter()
            .zip(b)
            .fold(Complex::new(P), |s, (x, y)| s + Complex::with_val(P, x * y))
    };
    // [lambda; mu] = G^{-1} [l0; m0] with G the pairings against p, q
    let (g11, g12, g21, g22) = (dot(&l0, &p), dot(&l0, &q), dot(&m0, &p), dot(&m0, &q));
    let det = Complex::with_val(P, &g11 * &g22) - Complex::with_val(P, &g12 * &g21);
    let lambda: Vec<Complex> = (0..m)
        .map(|i| (Complex::with_val(P, &g22 * &l0[i]) - Complex::with_val(P, &g12 * &m0[i])) / &det)
        .collect();
    let mu: Vec<Complex> = (0..m)
        .map(|i| (Complex::with_val(P, &g11 * &m0[i]) - Complex::with_val(P, &g21 * &l0[i])) / &det)
        .collect();
    // L[a][i] = p_a lambda_i + q_a mu_i
    let l: Vec<Vec<Complex>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|i| {
                    Complex::with_val(P, &p[a] * &lambda[i]) + Complex::with_val(P, &q[a] * &mu[i])
                })
                .collect()
        })
        .collect();
    CubicForm::from_fn(m, P, |i, j, k| {
        let mut d = Complex::new(P);
        for a in 0..m {
            for b in 0..m {
                let lab = Complex::with_val(P, &l[a][i] * &l[b][j]);
                for c in 0..m {
                    d += Complex::with_val(P, &t[a][b][c] * &lab) * &l[c][k];
                }
            }
        }
        Complex::with_val(P, &t[i][j][k] - d)
    })
}

fn criterion4() -> Verdict {
    let cases: Vec<(bool, u64)> = (0..100)
        .map(|i| (false, 5000 + i))
        .chain((0..50).map(|i| (true, 95_000 + i)))
        .collect();
    let results: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|&(planted, seed)| {
            let mut r = rng(seed);
            let c = if planted {
                planted_cubic(&mut r)
            } else {
                CubicForm::from_fn(5, P, |_, _, _| random_complex(&mut r))
            };
            let (s, stages) = lemma2_plane(&c, seed).map_err(|e| e.to_string())?;
            if s.dim() != 2 || gram_defect(s.basis()) > 1e-60 {
                return Err("bad basis".into());
            }
            let aux: Vec<usize> = stages.iter().filter_map(|s| s.auxiliary_degree).collect();
            if aux.iter().any(|d| *d != 3 && *d != 6) {
                return Err(format!("auxiliary degrees {aux:?}"));
            }
            let t = dense(&c);
            let scale = c
                .entries()
                .map(|(_, _, _, z)| abs(z).to_f64())
                .fold(0.0, f64::max);
            let coeffs = oracle::binary_cubic(&t, &s.basis()[0], &s.basis()[1]);
            Ok(max_abs(&coeffs) / scale / tol())
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let worst = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .cloned()
        .fold(0.0, f64::max);
    verdict(
        failures.is_empty() && worst <= 1.0,
        format!(
            "100 random + 50 planted cubics; worst binary-cubic coefficient {:.1e} of tol*scale{}",
            worst,
            failures.first().map_or(String::new(), |f| format!(
                "; {} failures, first: {f}",
                failures.len()
            ))
        ),
    )
}

/// `Res_x(f(x), y - g(x))` sampled on a circle and interpolated, then made
/// monic. Interpolation cancels digits, so this runs at `prec`.
fn resultant_path(f: &UniPoly, t: &[Complex], radius: f64, prec: u32) -> Vec<Complex> {
    let f = f.with_prec(prec);
    let n = f.degree();
    let count = n + 1;
    let pi = rug::Float::with_val(prec, rug::float::Constant::Pi);
    let omega = |j: usize| -> Complex {
        let angle = rug::Float::with_val(prec, &pi * (2 * j) as u32) / count as u32;
        Complex::with_val(prec, (angle.clone().cos(), angle.sin()))
    };
    let values: Vec<Complex> = (0..count)
        .map(|j| {
            let y = Complex::with_val(prec, omega(j) * radius);
            let mut h: Vec<Complex> = t.iter().map(|z| Complex::with_val(prec, -z)).collect();
            h.push(Complex::with_val(prec, -1));
            h[0] += &y;
            resultant(&f, &UniPoly::new(h))
        })
        .collect();
    let mut coeffs: Vec<Complex> = (0..count)
        .map(|k| {
            let mut s = Complex::new(prec);
            for (j, v) in values.iter().enumerate() {
                s += Complex::with_val(prec, v * omega((count * count - j * k) % count));
            }
            s / count as u32 / rug::Float::with_val(prec, radius).pow(k as u32)
        })
        .collect();
    let lead = coeffs[n].clone();
    for c in coeffs.iter_mut() {
        *c /= &lead;
    }
    coeffs
}

use rug::ops::Pow;

fn criterion5() -> Verdict {
    let results: Vec<Result<(f64, f64), String>> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let n = 2 + (i as usize % 7);
            let f = complex_monic(7000 + i, n);
            let mut r = rng(17_000 + i);
            let t: Vec<Complex> = (0..n - 1).map(|_| random_complex(&mut r) * 3u32).collect();
            let te = transform(&f, &TschirnhausMap::new(n, t.clone()).unwrap())
                .map_err(|e| e.to_string())?;
            // oracles at triple precision, so their own rounding is negligible
            let xs = durand_kerner(f.with_prec(ORACLE_P).coeffs(), ORACLE_P);
            let ys: Vec<Complex> = xs.iter().map(|x| apply_map(&t, x)).collect();
            let by_roots = expand(&ys);
            let scale = max_abs(&by_roots);
            let diff = |other: &[Complex]| {
                te.result
                    .coeffs()
                    .iter()
                    .zip(other)
                    .map(|(a, b)| abs(&Complex::with_val(P, a - b)).to_f64())
                    .fold(0.0, f64::max)
                    / scale
            };
            let via_res = resultant_path(&f, &t, max_abs(&ys).max(1.0), ORACLE_P);
            Ok((diff(&by_roots), diff(&via_res)))
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let (w1, w2) = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .fold((0f64, 0f64), |(a, b), (x, y)| (a.max(*x), b.max(*y)));
    verdict(
        failures.is_empty() && w1 <= tol() && w2 <= tol(),
        format!(
            "200 pairs, degrees 2..8; max coefficient gap vs root products {:.1e}, vs resultant path {:.1e} (relative to scale, bound {:.1e}){}",
            w1,
            w2,
            tol(),
            failures.first().map_or(String::new(), |f| format!("; {} errors, first: {f}", failures.len()))
        ),
    )
}

/// Degree of `s -> C_i(s d)` from its values on the unit circle.
fn ray_degrees(f: &UniPoly, d: &[Complex]) -> Result<Vec<usize>, String> {
    const SAMPLES: usize = 16;
    let n = f.degree();
    let pi = rug::Float::with_val(P, rug::float::Constant::Pi);
    let omega = |j: usize| -> Complex {
        let angle = rug::Float::with_val(P, &pi * (2 * j) as u32) / SAMPLES as u32;
        Complex::with_val(P, (angle.clone().cos(), angle.sin()))
    };
    let mut samples = Vec::with_capacity(SAMPLES);
    for j in 0..SAMPLES {
        let s = omega(j);
        let t: Vec<Complex> = d.iter().map(|x| Complex::with_val(P, x * &s)).collect();
        samples.push(
            transform(f, &TschirnhausMap::new(n, t).unwrap())
                .map_err(|e| e.to_string())?
                .c,
        );
    }
    Ok((0..n)
        .map(|i| {
            let coeffs: Vec<Complex> = (0..SAMPLES)
                .map(|k| {
                    let mut acc = Complex::new(P);
                    for (j, c) in samples.iter().enumerate() {
                        acc += Complex::with_val(
                            P,
                            &c[i] * omega((SAMPLES * SAMPLES - j * k) % SAMPLES),
                        );
                    }
                    acc / SAMPLES as u32
                })
                .collect();
            let top = max_abs(&coeffs);
            (0..SAMPLES)
                .rev()
                .find(|k| abs(&coeffs[*k]).to_f64() > 1e-50 * top)
                .unwrap_or(0)
        })
        .collect())
}

fn criterion6() -> Verdict {
    let results: Vec<Result<Vec<Vec<usize>>, String>> = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let f = complex_monic(30_000 + i, 5);
            let mut r = rng(31_000 + i);
            (0..10)
                .map(|_| {
                    ray_degrees(
                        &f,
                        &(0..4).map(|_| random_complex(&mut r)).collect::<Vec<_>>(),
                    )
                })
                .collect()
        })
        .collect();
    let mut above = 0;
    let mut exact = 0;
    let mut total = 0;
    let mut errors = Vec::new();
    for r in &results {
        match r {
            Ok(rays) => {
                for degs in rays {
                    for (i, d) in degs.iter().enumerate() {
                        total += 1;
                        above += usize::from(*d > i + 1);
                        exact += usize::from(*d == i + 1);
                    }
                }
            }
            Err(e) => errors.push(e.clone()),
        }
    }
    let share = exact as f64 / total.max(1) as f64;
    verdict(
        errors.is_empty() && above == 0 && share >= 0.9,
        format!(
            "{total} (quintic, ray, i) fits; degree > i on {above}, degree = i on {:.1}%{}",
            100.0 * share,
            errors
                .first()
                .map_or(String::new(), |e| format!("; error: {e}"))
        ),
    )
}

fn criterion7(reports: &[Result<ReductionReport, String>]) -> Verdict {
    let mut worst = [0f64; 4];
    let mut failures = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let report = match r {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("quintic {i}: {e}"));
                continue;
            }
        };
        let a = audit(report, 3);
        for (w, v) in worst
            .iter_mut()
            .zip([a.vanish, a.shape, a.root_residual, a.correspondence])
        {
            *w = w.max(v);
        }
        if !(a.vanish <= ACCEPT
            && a.shape <= ACCEPT
            && a.constant_is_one
            && report.parameter_count == 1)
            || a.root_residual > ACCEPT
            || a.correspondence > ACCEPT
        {
            failures.push(format!("quintic {i}: audit failed"));
        }
    }
    // x^5 - 1 with the zero map: y = x^4 permutes the fifth roots of unity
    let x5 = UniPoly::from_i64(P, &[-1, 0, 0, 0, 0, 1]);
    let zero = TschirnhausMap::zero(5, P);
    let trivial = transform(&x5, &zero)
        .map(|te| max_abs(&te.c[..3]))
        .unwrap_or(f64::INFINITY);
    let ys: Vec<Complex> = durand_kerner(x5.coeffs(), P)
        .iter()
        .map(|x| apply_map(zero.t(), x))
        .collect();
    let trivial_oracle = relative_leading(&expand(&ys), max_abs(&ys), 3);
    let x5_report = reduce_bring(&x5, SEED, P)
        .map(|r| verify_report(&r, None).pass())
        .unwrap_or(false);
    verdict(
        failures.is_empty() && trivial <= ACCEPT && trivial_oracle <= ACCEPT && x5_report,
        format!(
            "{} of {} quintics in z^5 + a z + 1 form; max |C_1..C_3|/R^k {:.1e}, root residual {:.1e}, root match {:.1e}; x^5-1 at t=0: |C_1..C_3| {:.1e} (oracle {:.1e}){}",
            reports.len() - failures.len(),
            reports.len(),
            worst[0].max(worst[1]),
            worst[2],
            worst[3],
            trivial,
            trivial_oracle,
            failures.first().map_or(String::new(), |f| format!("; {} failures, first: {f}", failures.len()))
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_resolvent"))
        .args(args)
        .output()
        .expect("the resolvent binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion8(
    theorem1: &[(u64, Result<ReductionReport, String>)],
    bring: &[Result<ReductionReport, String>],
) -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;

    // library reruns
    let f = integer_monic(1, 21);
    let a = reduce_theorem1(&f, SEED, P).map(|r| report_to_json(&r).to_string());
    let b = reduce_theorem1(&f, SEED, P).map(|r| report_to_json(&r).to_string());
    let same_t1 = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
    let q = complex_monic(40_000, 5);
    let same_bring = reduce_bring(&q, SEED, P)
        .map(|r| report_to_json(&r).to_string())
        .ok()
        == reduce_bring(&q, SEED, P)
            .map(|r| report_to_json(&r).to_string())
            .ok();
    ok &= same_t1 && same_bring;
    notes.push(format!(
        "library reruns identical: {}",
        same_t1 && same_bring
    ));

    // every genuine report verifies
    let genuine: Vec<&ReductionReport> = theorem1
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok())
        .chain(bring.iter().filter_map(|r| r.as_ref().ok()))
        .collect();
    let passing = genuine
        .iter()
        .filter(|r| verify_report(r, None).pass())
        .count();
    ok &= passing == genuine.len() && !genuine.is_empty();
    notes.push(format!(
        "verify passes {passing}/{} genuine reports",
        genuine.len()
    ));

    // the binary: byte-identical reruns, verify, planted corruptions
    let dir = tempfile::tempdir().expect("temp dir");
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    fs::write(path("f.json"), poly_to_json(&f).to_string()).unwrap();
    let (c1, _) = run_cli(&[
        "reduce",
        "--input",
        &path("f.json"),
        "--seed",
        "42",
        "--precision-bits",
        "256",
        "--output",
        &path("r1.json"),
    ]);
    let (c2, _) = run_cli(&[
        "reduce",
        "--input",
        &path("f.json"),
        "--seed",
        "42",
        "--precision-bits",
        "256",
        "--output",
        &path("r2.json"),
    ]);
    let r1 = fs::read(path("r1.json")).unwrap_or_default();
    let cli_same =
        c1 == 0 && c2 == 0 && !r1.is_empty() && r1 == fs::read(path("r2.json")).unwrap_or_default();
    ok &= cli_same;
    notes.push(format!("CLI reruns byte-identical: {cli_same}"));

    let (v, _) = run_cli(&["verify", "--input", &path("r1.json")]);
    ok &= v == 0;
    notes.push(format!("verify genuine exit {v}"));

    let report: Value = serde_json::from_slice(&r1).unwrap_or(Value::Null);
    let failed_checks = |edited: &Value, name: &str| -> (i32, bool) {
        fs::write(path(name), edited.to_string()).unwrap();
        let (code, out) = run_cli(&["verify", "--input", &path(name)]);
        let verdict: Value = serde_json::from_slice(&out).unwrap_or(Value::Null);
        let fails = |check: &str| {
            verdict["checks"]
                .as_array()
                .is_some_and(|cs| cs.iter().any(|c| c["name"] == check && c["pass"] == false))
        };
        (
            code,
            fails(if name.starts_with("const") {
                "normalization"
            } else {
                "degree-ledger"
            }),
        )
    };
    if report.is_object() {
        let mut constant = report.clone();
        constant["trace"]["final_poly"]["coeffs"][0] = serde_json::json!(["2", "0"]);
        let (code, flagged) = failed_checks(&constant, "constant.json");
        ok &= code == 2 && flagged;
        notes.push(format!(
            "edited constant: exit {code}, normalization flagged {flagged}"
        ));

        let mut degree = report.clone();
        let stages = degree["trace"]["stages"].as_array_mut().unwrap();
        let target = stages
            .iter_mut()
            .find(|s| s["auxiliary_degree"].is_u64())
            .unwrap();
        target["auxiliary_degree"] = serde_json::json!(7);
        let (code, flagged) = failed_checks(&degree, "degree.json");
        ok &= code == 2 && flagged;
        notes.push(format!(
            "edited stage degree: exit {code}, degree-ledger flagged {flagged}"
        ));
    } else {
        ok = false;
        notes.push("CLI produced no report".into());
    }
    verdict(ok, notes.join("; "))
}

fn main() {
    let start = Instant::now();
    let theorem1: Vec<(u64, Result<ReductionReport, String>)> = (1..=10u64)
        .into_par_iter()
        .map(|seed| {
            (
                seed,
                reduce_theorem1(&integer_monic(seed, 21), SEED, P).map_err(|e| e.to_string()),
            )
        })
        .collect();
    let t1_time = start.elapsed();
    let bring: Vec<Result<ReductionReport, String>> = (0..100u64)
        .into_par_iter()
        .map(|i| reduce_bring(&complex_monic(20_000 + i, 5), SEED, P).map_err(|e| e.to_string()))
        .collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + Sync + '_>)> = vec![
        ("theorem1-end-to-end", Box::new(|| criterion1(&theorem1))),
        ("degree-ledger", Box::new(|| criterion2(&theorem1))),
        ("lemma1-properties", Box::new(criterion3)),
        ("lemma2-properties", Box::new(criterion4)),
        ("transform-oracles", Box::new(criterion5)),
        ("degree-structure", Box::new(criterion6)),
        ("bring-jerrard", Box::new(|| criterion7(&bring))),
        (
            "determinism-and-verify",
            Box::new(|| criterion8(&theorem1, &bring)),
        ),
    ];
    let mut all = true;
    println!("degree-21 reductions took {:.1?} in total", t1_time);
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        all &= v.pass;
        println!(
            "{} criterion {} {:<24} ({:.1?}) {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            t.elapsed(),
            v.detail
        );
    }
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if !all {
        std::process::exit(1);
    }
}
