//! Case analysis for `x^3 - b x^2 + c x + d` with `b, d > 0`.

use std::fmt;

use super::Counts;
use crate::error::{Error, Result};
use crate::poly::{fourier_signs_exact, fourier_table, Poly};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicCase {
    /// `P(-1) < 0`, `P(1) < 0`: two real roots in `(-1, 1)`, one above 1.
    VI,
    /// `b > 2`, `P(-1) < 0`, `P(1) > 0`: one root in `(-1, 0)`, two outside.
    VII,
    /// `b > 2`, `P(-1) > 0`, `P(1) < 0`: one root in `(0, 1)`, two outside.
    VIII,
    /// `b > 2`, `P(-1) > 0`, `P(1) > 0`: every root outside.
    IX,
    /// `b > 2`, `P(-1) = 0`, `P'(-1) != 0`, `P(1) < 0`.
    XRootAtMinusOne,
    /// `b > 2`, `P(-1) > 0`, `P(1) = 0`, `P'(1) != 0`.
    XRootAtOne,
    Unclassified(String),
}

impl CubicCase {
    pub fn id(&self) -> &'static str {
        match self {
            CubicCase::VI => "vi",
            CubicCase::VII => "vii",
            CubicCase::VIII => "viii",
            CubicCase::IX => "ix",
            CubicCase::XRootAtMinusOne => "x-minus-one",
            CubicCase::XRootAtOne => "x-one",
            CubicCase::Unclassified(_) => "unclassified",
        }
    }
}

impl fmt::Display for CubicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicCase::Unclassified(why) => write!(f, "unclassified ({why})"),
            other => write!(f, "case ({})", other.id()),
        }
    }
}

/// Which part of the case analysis applies and the root layout it asserts.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicCaseProfile {
    pub case: CubicCase,
    pub p_minus_one: f64,
    pub p_one: f64,
    pub dp_minus_one: f64,
    pub dp_one: f64,
    pub b_above_two: bool,
    /// Asserted counts relative to the unit circle; `None` when unclassified.
    pub layout: Option<Counts>,
    /// Exactly one root in `(-1, 0)` holds iff `P(-1) < 0`; `None` when
    /// `P(-1)` is numerically zero.
    pub root_in_minus_one_zero: Option<bool>,
    /// Fourier tables at `-1` and `1` (values of `P, P', P'', P'''`).
    pub table_minus_one: Vec<f64>,
    pub table_one: Vec<f64>,
}

impl CubicCaseProfile {
    pub fn layout_text(&self) -> &'static str {
        match self.case {
            CubicCase::VI => "two real roots in (-1, 1), one real root > 1",
            CubicCase::VII => "one real root in (-1, 0), two roots outside the unit disk",
            CubicCase::VIII => "one real root in (0, 1), two roots outside the unit disk",
            CubicCase::IX => "all roots outside the unit disk",
            CubicCase::XRootAtMinusOne => "root at -1, one root in (0, 1), one root > 1",
            CubicCase::XRootAtOne => "root at 1, one root < -1, one root > 1",
            CubicCase::Unclassified(_) => "no layout asserted",
        }
    }
}

fn sign(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Selects the applicable case from the signs of `P(-1)`, `P(1)` and their
/// derivatives. With `tol.exact` the Fourier tables are evaluated in
/// rational arithmetic and only exact zeros count as zero.
pub fn cubic_profile(b: f64, c: f64, d: f64, tol: &Tolerances) -> Result<CubicCaseProfile> {
    if !(b > 0.0) {
        return Err(Error::HypothesisNotMet(format!("b must be > 0, got {b}")));
    }
    if !(d > 0.0) {
        return Err(Error::HypothesisNotMet(format!("d must be > 0, got {d}")));
    }
    if !c.is_finite() {
        return Err(Error::invalid("c", "must be finite"));
    }
    let p = Poly::from_descending(&[1.0, -b, c, d]);
    let (tm, tp, zt) = if tol.exact {
        (
            fourier_signs_exact(&p, -1.0)?.to_f64(),
            fourier_signs_exact(&p, 1.0)?.to_f64(),
            0.0,
        )
    } else {
        (
            fourier_table(&p, -1.0, tol.zero_tol).values().to_vec(),
            fourier_table(&p, 1.0, tol.zero_tol).values().to_vec(),
            tol.zero_tol,
        )
    };
    // exact-mode values below the double range still carry their sign
    let (sm, sp) = (sign(tm[0], zt), sign(tp[0], zt));
    let (sdm, sdp) = (sign(tm[1], zt), sign(tp[1], zt));
    let b2 = b > 2.0;

    let case = match (sm, sp) {
        (-1, -1) => CubicCase::VI,
        _ if !b2 => CubicCase::Unclassified("b <= 2".into()),
        (-1, 1) => CubicCase::VII,
        (1, -1) => CubicCase::VIII,
        (1, 1) => CubicCase::IX,
        (0, -1) if sdm != 0 => CubicCase::XRootAtMinusOne,
        (1, 0) if sdp != 0 => CubicCase::XRootAtOne,
        _ => CubicCase::Unclassified("P(-1) or P(1) is zero outside the listed cases".into()),
    };
    let counts = |inside, outside, boundary| {
        Some(Counts {
            inside,
            outside,
            boundary,
        })
    };
    let layout = match case {
        CubicCase::VI => counts(2, 1, 0),
        CubicCase::VII | CubicCase::VIII => counts(1, 2, 0),
        CubicCase::IX => counts(0, 3, 0),
        CubicCase::XRootAtMinusOne => counts(1, 1, 1),
        CubicCase::XRootAtOne => counts(0, 2, 1),
        CubicCase::Unclassified(_) => None,
    };
    Ok(CubicCaseProfile {
        case,
        p_minus_one: tm[0],
        p_one: tp[0],
        dp_minus_one: tm[1],
        dp_one: tp[1],
        b_above_two: b2,
        layout,
        root_in_minus_one_zero: match sm {
            0 => None,
            s => Some(s < 0),
        },
        table_minus_one: tm,
        table_one: tp,
    })
}
