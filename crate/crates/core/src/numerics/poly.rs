use std::fmt;

use super::scalar::{self, Complex, Float};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The degree is `coeffs.len() - 1` as stored: a vanishing leading
/// coefficient is kept, since several callers care about the formal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex>,
}

impl UniPoly {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        UniPoly { coeffs }
    }

    /// Monic polynomial `x^n + lower[n-1] x^(n-1) + ... + lower[0]`.
    pub fn monic(prec: u32, lower: &[Complex]) -> Self {
        let mut coeffs: Vec<Complex> = lower.iter().map(|c| scalar::to_prec(c, prec)).collect();
        coeffs.push(scalar::one(prec));
        UniPoly { coeffs }
    }

    pub fn from_i64(prec: u32, coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| scalar::from_i64(prec, c)).collect())
    }

    pub fn constant(value: Complex) -> Self {
        UniPoly {
            coeffs: vec![value],
        }
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(prec: u32, roots: &[Complex]) -> Self {
        let mut coeffs = vec![scalar::one(prec)];
        for r in roots {
            let mut next = vec![scalar::zero(prec); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        UniPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Complex {
        &self.coeffs[i]
    }

    pub fn leading(&self) -> &Complex {
        &self.coeffs[self.degree()]
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec().0
    }

    pub fn is_monic(&self) -> bool {
        let lc = self.leading();
        lc.real() == &1 && lc.imag().is_zero()
    }

    /// Max coefficient magnitude.
    pub fn scale(&self) -> Float {
        scalar::max_abs(self.prec(), &self.coeffs)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| scalar::to_prec(c, prec))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Complex) -> Complex {
        let prec = self.prec().max(x.prec().0);
        let mut acc = scalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `(p(x), p'(x))` by a single Horner sweep.
    pub fn eval_with_derivative(&self, x: &Complex) -> (Complex, Complex) {
        let prec = self.prec().max(x.prec().0);
        let mut p = scalar::zero(prec);
        let mut dp = scalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            dp *= x;
            dp += &p;
            p *= x;
            p += c;
        }
        (p, dp)
    }

    /// `sum |c_i| |x|^i`, the magnitude against which a residual `|p(x)|`
    /// is judged relative.
    pub fn eval_abs(&self, x: &Complex) -> Float {
        let prec = self.prec();
        let r = scalar::abs(x);
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= &r;
            acc += scalar::abs(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return UniPoly::constant(scalar::zero(self.prec()));
        }
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Complex::with_val(c.prec(), c * i as u32))
                .collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let prec = self.prec().max(other.prec());
        let mut out = vec![scalar::zero(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly { coeffs: out }
    }

    pub fn scaled(&self, factor: &Complex) -> UniPoly {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::with_val(c.prec(), c * factor))
                .collect(),
        }
    }

    /// Drops leading coefficients with magnitude `<= rel * scale`, keeping
    /// at least the constant term.
    pub fn trimmed(&self, rel: &Float) -> UniPoly {
        let threshold = Float::with_val(self.prec(), rel * self.scale());
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && scalar::abs(coeffs.last().unwrap()) <= threshold {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Divides through by the leading coefficient.
    pub fn make_monic(&self) -> UniPoly {
        let prec = self.prec();
        let inv = Complex::with_val(prec, self.leading().recip_ref());
        let mut coeffs: Vec<Complex> = self
            .coeffs
            .iter()
            .map(|c| Complex::with_val(prec, c * &inv))
            .collect();
        *coeffs.last_mut().unwrap() = scalar::one(prec);
        UniPoly { coeffs }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.real().is_zero() && c.imag().is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (re, im) = (c.real().to_f64(), c.imag().to_f64());
            if im == 0.0 {
                write!(f, "{re:e}")?;
            } else {
                write!(f, "({re:e}{im:+e}i)")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
