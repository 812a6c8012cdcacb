//! Fourier sign sequences in exact rational arithmetic.
//!
//! Every finite `f64` is a dyadic rational, so the conversion below is exact
//! and the only rounding left is the one already baked into the inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{count_variations, Poly, RootBound};
use crate::error::{Error, Result};

pub(crate) fn to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::invalid("coefficient", "must be finite"))
}

fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact Fourier table: the values of `p, p', ..., p^(d)` at `at`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactFourierTable {
    pub at: BigRational,
    pub entries: Vec<BigRational>,
}

impl ExactFourierTable {
    pub fn signs(&self) -> Vec<i8> {
        self.entries.iter().map(sign).collect()
    }

    pub fn variations(&self) -> usize {
        count_variations(self.signs())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.entries
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

fn rational_coeffs(p: &Poly) -> Result<Vec<BigRational>> {
    p.coeffs().iter().map(|&c| to_rational(c)).collect()
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derive(coeffs: &[BigRational]) -> Vec<BigRational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Exact Fourier table of the polynomial with the given (exactly converted)
/// coefficients at a rational point.
pub(crate) fn fourier_exact_rational(p: &Poly, at: BigRational) -> Result<ExactFourierTable> {
    let mut q = rational_coeffs(p)?;
    let mut entries = Vec::with_capacity(p.degree() + 1);
    for _ in 0..=p.degree() {
        entries.push(horner(&q, &at));
        q = derive(&q);
    }
    Ok(ExactFourierTable { at, entries })
}

/// Exact Fourier table of `p` at `x`.
pub fn fourier_signs_exact(p: &Poly, x: f64) -> Result<ExactFourierTable> {
    fourier_exact_rational(p, to_rational(x)?)
}

/// Exact sign variations of a sequence of floats (only exact zeros skipped).
pub fn exact_sign_variations(values: &[f64]) -> usize {
    count_variations(values.iter().map(|&v| {
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    }))
}

/// Budan–Fourier bound with every sign decided exactly; only an exact root at
/// an endpoint is degenerate.
pub fn budan_fourier_bound_exact(p: &Poly, a: f64, b: f64) -> Result<RootBound> {
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ta = fourier_signs_exact(p, a)?;
    let tb = fourier_signs_exact(p, b)?;
    if ta.entries[0].is_zero() {
        return Err(Error::DegenerateEndpoint { at: a });
    }
    if tb.entries[0].is_zero() {
        return Err(Error::DegenerateEndpoint { at: b });
    }
    let (va, vb) = (ta.variations(), tb.variations());
    if vb > va {
        return Err(Error::MonotonicityViolated { va, vb });
    }
    Ok(RootBound {
        interval: (a, b),
        max_roots: va - vb,
        parity_fixed: true,
    })
}
