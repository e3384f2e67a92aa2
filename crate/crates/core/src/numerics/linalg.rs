//! Small dense complex linear algebra: determinants, solves, null spaces and
//! Gram–Schmidt. Matrices are row-major `Vec<Vec<Complex>>`.

use super::scalar::{self, Complex, Float};

pub type Matrix = Vec<Vec<Complex>>;

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut a: Matrix, prec: u32) -> Complex {
    let n = a.len();
    let mut det = scalar::one(prec);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                scalar::abs(&a[i][col])
                    .partial_cmp(&scalar::abs(&a[j][col]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot][col].is_zero() {
            return scalar::zero(prec);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = Complex::with_val(prec, a[col][col].recip_ref());
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = Complex::with_val(prec, &a[row][col] * &inv);
            let (top, bottom) = a.split_at_mut(row);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Solves `a x = b`; `None` when a pivot is exactly zero.
pub fn solve(mut a: Matrix, mut b: Vec<Complex>, prec: u32) -> Option<Vec<Complex>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            scalar::abs(&a[i][col])
                .partial_cmp(&scalar::abs(&a[j][col]))
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(pivot, col);
        b.swap(pivot, col);
        let inv = Complex::with_val(prec, a[col][col].recip_ref());
        for row in col + 1..n {
            let factor = Complex::with_val(prec, &a[row][col] * &inv);
            if factor.is_zero() {
                continue;
            }
            let (top, bottom) = a.split_at_mut(row);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &factor * y;
            }
            let bc = b[col].clone();
            b[row] -= &factor * &bc;
        }
    }
    let mut x = vec![scalar::zero(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= &a[row][k] * &x[k];
        }
        x[row] = acc / &a[row][row];
    }
    Some(x)
}

/// Basis of `{x : rows * x = 0}` in `cols` unknowns, or `None` when the rows
/// are dependent: a pivot falls below `rel_tol` times the largest entry.
///
/// Uses complete pivoting and back-substitution to reduced echelon form, so
/// each basis vector has a unit entry at one free coordinate.
pub fn null_space(
    rows: &[Vec<Complex>],
    cols: usize,
    rel_tol: &Float,
    prec: u32,
) -> Option<Vec<Vec<Complex>>> {
    let mut a: Matrix = rows
        .iter()
        .map(|r| r.iter().map(|z| scalar::to_prec(z, prec)).collect())
        .collect();
    let r = a.len();
    if r > cols {
        return None;
    }
    let scale = scalar::max_abs(prec, a.iter().flatten());
    if scale.is_zero() {
        return None;
    }
    let threshold = Float::with_val(prec, &scale * rel_tol);
    let mut perm: Vec<usize> = (0..cols).collect();
    for k in 0..r {
        let mut best = (k, k, Float::new(prec));
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, z) in row.iter().enumerate().skip(k) {
                let m = scalar::abs(z);
                if m > best.2 {
                    best = (i, j, m);
                }
            }
        }
        if best.2 <= threshold {
            return None;
        }
        a.swap(k, best.0);
        for row in a.iter_mut() {
            row.swap(k, best.1);
        }
        perm.swap(k, best.1);
        let inv = Complex::with_val(prec, a[k][k].recip_ref());
        for z in a[k].iter_mut() {
            *z *= &inv;
        }
        for i in 0..r {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            let pivot_row = a[k].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
    }
    // a is now [I | F] in permuted coordinates.
    let mut basis = Vec::with_capacity(cols - r);
    for free in r..cols {
        let mut v = vec![scalar::zero(prec); cols];
        v[perm[free]] = scalar::one(prec);
        for (k, row) in a.iter().enumerate() {
            v[perm[k]] = Complex::with_val(prec, -&row[free]);
        }
        basis.push(v);
    }
    Some(basis)
}

/// Hermitian inner product `<a, b> = sum conj(a_i) b_i`.
pub fn inner(a: &[Complex], b: &[Complex]) -> Complex {
    let prec = a.first().map_or(scalar::MIN_PRECISION, |z| z.prec().0);
    let mut acc = scalar::zero(prec);
    for (x, y) in a.iter().zip(b) {
        acc += Complex::with_val(prec, x.conj_ref()) * y;
    }
    acc
}

/// Orthonormalizes (Hermitian) by modified Gram–Schmidt with one
/// re-orthogonalization pass. `None` if a vector loses more than a factor
/// `rel_tol` of its norm to the projection, i.e. the set is dependent.
pub fn orthonormalize(vectors: &[Vec<Complex>], rel_tol: &Float) -> Option<Vec<Vec<Complex>>> {
    let mut out: Vec<Vec<Complex>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let prec = v.first().map_or(scalar::MIN_PRECISION, |z| z.prec().0);
        let original = scalar::norm(v);
        if original.is_zero() {
            return None;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = inner(q, &w);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= &c * y;
                }
            }
        }
        let nw = scalar::norm(&w);
        if nw <= Float::with_val(prec, &original * rel_tol) {
            return None;
        }
        let inv = Float::with_val(prec, nw.recip_ref());
        for x in w.iter_mut() {
            *x *= &inv;
        }
        out.push(w);
    }
    Some(out)
}

/// Lower bound on the smallest singular value of the column-normalized
/// matrix whose columns are `vectors`: `1 / ||R^-1||_F` from a QR
/// factorization, which sits within a factor `sqrt(k)` of the true value.
pub fn min_singular_lower_bound(vectors: &[Vec<Complex>]) -> Float {
    let k = vectors.len();
    let prec = vectors
        .first()
        .and_then(|v| v.first())
        .map_or(scalar::MIN_PRECISION, |z| z.prec().0);
    if k == 0 {
        return Float::with_val(prec, 1);
    }
    // Gram–Schmidt on normalized columns, keeping R.
    let mut q: Vec<Vec<Complex>> = Vec::with_capacity(k);
    let mut r = vec![vec![scalar::zero(prec); k]; k];
    for (j, v) in vectors.iter().enumerate() {
        let nv = scalar::norm(v);
        if nv.is_zero() {
            return Float::new(prec);
        }
        let mut w: Vec<Complex> = v.iter().map(|x| Complex::with_val(prec, x / &nv)).collect();
        for (i, qi) in q.iter().enumerate() {
            let c = inner(qi, &w);
            for (x, y) in w.iter_mut().zip(qi) {
                *x -= &c * y;
            }
            r[i][j] += c;
        }
        let nw = scalar::norm(&w);
        if nw.is_zero() {
            return Float::new(prec);
        }
        r[j][j] = Complex::with_val(prec, &nw);
        for x in w.iter_mut() {
            *x /= &nw;
        }
        q.push(w);
    }
    // Frobenius norm of R^-1 by back-substituting each unit vector.
    let mut frob = Float::new(prec);
    for col in 0..k {
        let mut x = vec![scalar::zero(prec); k];
        for row in (0..=col).rev() {
            let mut acc = if row == col {
                scalar::one(prec)
            } else {
                scalar::zero(prec)
            };
            for m in row + 1..=col {
                acc -= &r[row][m] * &x[m];
            }
            x[row] = acc / &r[row][row];
        }
        frob += scalar::norm_sqr(&x);
    }
    Float::with_val(prec, frob.sqrt().recip_ref())
}
