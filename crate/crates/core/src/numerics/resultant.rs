use super::linalg::{self, Matrix};
use super::poly::UniPoly;
use super::scalar::{self, Complex};

/// Sylvester matrix of `f` (formal degree n) and `g` (formal degree m):
/// m shifted rows of `f` followed by n shifted rows of `g`, coefficients
/// from the highest power down.
pub fn sylvester_matrix(f: &UniPoly, g: &UniPoly) -> Matrix {
    let (n, m) = (f.degree(), g.degree());
    let prec = f.prec().max(g.prec());
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..m {
        let mut row = vec![scalar::zero(prec); size];
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            row[shift + k] = scalar::to_prec(c, prec);
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![scalar::zero(prec); size];
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            row[shift + k] = scalar::to_prec(c, prec);
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g) = lc(f)^deg(g) * prod g(alpha_i)` over the roots of `f`,
/// as the determinant of the Sylvester matrix.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Complex {
    let prec = f.prec().max(g.prec());
    if f.degree() + g.degree() == 0 {
        return scalar::one(prec);
    }
    linalg::determinant(sylvester_matrix(f, g), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_pair() {
        let r = resultant(
            &UniPoly::from_i64(128, &[-2, 1]),
            &UniPoly::from_i64(128, &[-5, 1]),
        );
        assert_eq!(r, scalar::from_i64(128, -3));
    }

    #[test]
    fn quadratic_pair() {
        let r = resultant(
            &UniPoly::from_i64(128, &[1, 0, 1]),
            &UniPoly::from_i64(128, &[-1, 0, 1]),
        );
        assert_eq!(r, scalar::from_i64(128, 4));
    }

    #[test]
    fn constant_second_argument() {
        let r = resultant(
            &UniPoly::from_i64(128, &[1, 2, 3]),
            &UniPoly::from_i64(128, &[5]),
        );
        assert_eq!(r, scalar::from_i64(128, 25));
    }
}
