//! Dense real polynomials and the classical real-root bounds.
//!
//! Everything here is a pure function of its inputs. Coefficients are stored
//! in ascending degree order; the characteristic polynomials handled by this
//! crate have degree at most five, so no sparse representation is needed.

mod exact;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use exact::{
    budan_fourier_bound_exact, exact_sign_variations, fourier_signs_exact, ExactFourierTable,
};

/// A real polynomial, `coeffs[i]` multiplying `x^i`.
///
/// Trailing zero coefficients are trimmed on construction, so the last stored
/// coefficient is nonzero unless the polynomial is identically zero (stored as
/// the single coefficient `0.0`).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    /// Builds from coefficients listed highest degree first, the way
    /// polynomials are usually written down.
    pub fn from_descending(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().rev().copied().collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficients highest degree first.
    pub fn descending(&self) -> Vec<f64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `p(z)` together with a running bound on the rounding error of the
    /// Horner recurrence.
    pub(crate) fn eval_complex_with_error(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
            mag = mag * r + c.abs();
        }
        let n = self.coeffs.len() as f64;
        (acc, 4.0 * n * f64::EPSILON * mag)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(1.0 / self.leading())
    }
}

impl fmt::Display for Poly {
    /// Writes `x^3 - 2.7775x^2 + 1.9612x - 0.3712`. The formatter precision,
    /// when given, fixes the number of decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let precision = f.precision();
        let num = |v: f64| match precision {
            Some(p) => format!("{v:.p$}"),
            None => format!("{v}"),
        };
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = if i > 0 && mag == 1.0 {
                String::new()
            } else {
                num(mag)
            };
            match i {
                0 => write!(f, "{}", num(mag))?,
                1 => write!(f, "{body}x")?,
                _ => write!(f, "{body}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Horner evaluation of `p` at `x`.
pub fn eval(p: &Poly, x: f64) -> f64 {
    p.eval(x)
}

/// First derivative of `p`.
pub fn derivative(p: &Poly) -> Poly {
    p.derivative()
}

/// A finite sequence of reals whose sign changes are counted, entries with
/// magnitude at most `zero_tol` being treated as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSeq {
    values: Vec<f64>,
    zero_tol: f64,
}

impl SignSeq {
    /// # Panics
    /// If `values` is empty or `zero_tol` is negative.
    pub fn new(values: Vec<f64>, zero_tol: f64) -> Self {
        assert!(!values.is_empty(), "sign sequence must be nonempty");
        assert!(zero_tol >= 0.0, "zero_tol must be nonnegative");
        Self { values, zero_tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    /// -1, 0 or 1 for each entry after applying the zero threshold.
    pub fn signs(&self) -> Vec<i8> {
        self.values
            .iter()
            .map(|&v| {
                if v.abs() <= self.zero_tol {
                    0
                } else if v > 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

/// Counts sign variations: pairs of nonzero entries of opposite sign with only
/// zeros between them. Runs of zeros anywhere, including at either end,
/// contribute nothing.
pub fn sign_variations(s: &SignSeq) -> usize {
    count_variations(s.signs())
}

pub(crate) fn count_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `p` and all of its derivatives evaluated at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    pub source: Poly,
    pub at: f64,
    pub entries: SignSeq,
}

impl FourierTable {
    pub fn variations(&self) -> usize {
        sign_variations(&self.entries)
    }

    pub fn values(&self) -> &[f64] {
        self.entries.values()
    }
}

/// Evaluates `(p, p', ..., p^(d))` at `x`; the table has `degree + 1` entries.
pub fn fourier_table(p: &Poly, x: f64, zero_tol: f64) -> FourierTable {
    let mut values = Vec::with_capacity(p.degree() + 1);
    let mut q = p.clone();
    for _ in 0..=p.degree() {
        values.push(q.eval(x));
        q = q.derivative();
    }
    FourierTable {
        source: p.clone(),
        at: x,
        entries: SignSeq::new(values, zero_tol),
    }
}

/// Upper bound on the number of real roots in an open interval.
///
/// `parity_fixed` means the true count differs from `max_roots` by an even
/// number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBound {
    pub interval: (f64, f64),
    pub max_roots: usize,
    pub parity_fixed: bool,
}

/// Budan–Fourier bound on the number of real roots (with multiplicity) of `p`
/// in `(a, b)`: `v_a - v_b`, with the true count of the same parity.
///
/// Refuses when either endpoint is numerically a root; callers that need a
/// bound anyway should nudge the endpoint (see [`nudge`]).
pub fn budan_fourier_bound(p: &Poly, a: f64, b: f64, zero_tol: f64) -> Result<RootBound> {
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for x in [a, b] {
        if p.eval(x).abs() <= zero_tol {
            return Err(Error::DegenerateEndpoint { at: x });
        }
    }
    let va = fourier_table(p, a, zero_tol).variations();
    let vb = fourier_table(p, b, zero_tol).variations();
    if vb > va {
        return Err(Error::MonotonicityViolated { va, vb });
    }
    Ok(RootBound {
        interval: (a, b),
        max_roots: va - vb,
        parity_fixed: true,
    })
}

/// Endpoint perturbation for callers that hit [`Error::DegenerateEndpoint`].
pub fn nudge(endpoint: f64, direction: f64) -> f64 {
    endpoint + direction.signum() * 1e-7 * (1.0 + endpoint.abs())
}

/// Descartes' rule of signs on `(0, +inf)`.
pub fn descartes_positive_bound(p: &Poly) -> RootBound {
    let signs = p.coeffs().iter().map(|&c| {
        if c > 0.0 {
            1
        } else if c < 0.0 {
            -1
        } else {
            0
        }
    });
    RootBound {
        interval: (0.0, f64::INFINITY),
        max_roots: count_variations(signs),
        parity_fixed: true,
    }
}

/// `1 + max |a_i / a_d|`: every complex root has modulus at most this value.
/// A constant polynomial has no roots and gets the vacuous bound 1.
pub fn cauchy_bound(p: &Poly) -> f64 {
    let lead = p.leading();
    let d = p.degree();
    1.0 + p.coeffs()[..d]
        .iter()
        .fold(0.0_f64, |m, c| m.max((c / lead).abs()))
}

/// The monic polynomial whose roots are the reciprocals of the roots of `p`.
pub fn reciprocal_poly(p: &Poly, zero_tol: f64) -> Result<Poly> {
    let c0 = p.coeffs()[0];
    if c0.abs() <= zero_tol {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(Poly::new(p.coeffs().iter().rev().map(|c| c / c0).collect()))
}
