//! Blanchard–Kahn counting and the analytic classifiers.
//!
//! Each classifier turns a closed-form condition on the model parameters into
//! a [`Verdict`] (for necessary-and-sufficient results) or a
//! [`CertainVerdict`] (for one-sided results). [`cross_validate`] pairs the
//! two with the numeric oracle.

mod bm;
mod blp;
mod cubic;
mod gabaix;
mod validate;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::oracle::RootProfile;
use crate::poly::Poly;
use crate::region::Constraint;

pub use bm::{bm_forward_classify, bm_inertial_classify, bm_noninertial_classify};
pub use blp::{blp_necessary_check, BlpReport};
pub use cubic::{cubic_profile, CubicCase, CubicCaseProfile};
pub use gabaix::{
    gabaix_region_membership, gabaix_stability_test, sufficient_linear_check, GabaixRegionReport,
};
pub use validate::{classify, cross_validate, Agreement, AgreementReport, Analytic, SkipReason};

/// Determinacy outcome for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Determinate,
    Indeterminate,
    NoStableSolution,
    Boundary,
    HypothesisNotMet,
}

impl Outcome {
    /// Lowercase token used in CSV output.
    pub fn token(self) -> &'static str {
        match self {
            Outcome::Determinate => "determinate",
            Outcome::Indeterminate => "indeterminate",
            Outcome::NoStableSolution => "no-stable-solution",
            Outcome::Boundary => "boundary",
            Outcome::HypothesisNotMet => "hypothesis-not-met",
        }
    }

    /// Whether the outcome is a definite yes/no on determinacy.
    pub fn is_decisive(self) -> bool {
        matches!(
            self,
            Outcome::Determinate | Outcome::Indeterminate | Outcome::NoStableSolution
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Determinate => "Determinate",
            Outcome::Indeterminate => "Indeterminate",
            Outcome::NoStableSolution => "NoStableSolution",
            Outcome::Boundary => "Boundary",
            Outcome::HypothesisNotMet => "HypothesisNotMet",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub inside: usize,
    pub outside: usize,
    pub boundary: usize,
}

impl From<&RootProfile> for Counts {
    fn from(p: &RootProfile) -> Self {
        Counts {
            inside: p.inside,
            outside: p.outside,
            boundary: p.boundary,
        }
    }
}

/// What fired and why.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Evidence {
    pub condition: String,
    pub constraints: Vec<Constraint>,
    pub counts: Option<Counts>,
    pub poly: Option<Poly>,
}

impl Evidence {
    pub fn named(condition: impl Into<String>) -> Self {
        Self {
            condition: condition.into(),
            ..Self::default()
        }
    }

    /// Smallest absolute value among the recorded decisive expressions.
    pub fn min_abs_expr(&self) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.expr.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn new(outcome: Outcome, evidence: Evidence) -> Self {
        Self { outcome, evidence }
    }
}

/// Strength of a one-sided result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    /// A sufficient condition holds, so the claimed property is proved.
    SufficientHolds,
    /// A necessary condition fails, so determinacy is ruled out.
    NecessaryFails,
    Inconclusive,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::SufficientHolds => "SufficientHolds",
            Certainty::NecessaryFails => "NecessaryFails",
            Certainty::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertainVerdict {
    pub certainty: Certainty,
    pub evidence: Evidence,
}

/// Blanchard–Kahn comparison of the explosive-root count with the number of
/// jump variables. Any root on the circle overrides the count.
pub fn blanchard_kahn(profile: &RootProfile, required_outside: usize) -> Verdict {
    let outcome = if profile.boundary > 0 {
        Outcome::Boundary
    } else if profile.outside == required_outside {
        Outcome::Determinate
    } else if profile.outside < required_outside {
        Outcome::Indeterminate
    } else {
        Outcome::NoStableSolution
    };
    Verdict::new(
        outcome,
        Evidence {
            condition: format!(
                "{} outside, {} required",
                profile.outside, required_outside
            ),
            counts: Some(Counts::from(profile)),
            ..Evidence::default()
        },
    )
}

/// Arithmetic shared by `f64` and exact rationals, so each closed-form
/// expression is written once and evaluated either way.
pub(crate) trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn lit(v: f64) -> Self;
}

impl Scalar for f64 {
    fn lit(v: f64) -> Self {
        v
    }
}

impl Scalar for BigRational {
    fn lit(v: f64) -> Self {
        BigRational::from_float(v).expect("finite literal")
    }
}

/// Evaluates `f` on `vals` in floating point, or exactly (then rounded to the
/// nearest double, which keeps the sign) when `exact` is set.
pub(crate) fn eval_expr(
    vals: &[f64],
    exact: bool,
    float: fn(&[f64]) -> f64,
    rational: fn(&[BigRational]) -> BigRational,
) -> f64 {
    if !exact {
        return float(vals);
    }
    use num_traits::{Signed, ToPrimitive, Zero};
    let q: Vec<BigRational> = vals.iter().map(|&v| BigRational::lit(v)).collect();
    let r = rational(&q);
    if r.is_zero() {
        return 0.0;
    }
    let v = r.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 || !v.is_finite() {
        // keep the exact sign even when the magnitude is not representable
        let s = if r.is_positive() { 1.0 } else { -1.0 };
        return s * f64::MIN_POSITIVE;
    }
    v
}

macro_rules! expr {
    ($f:ident, $vals:expr, $exact:expr) => {
        $crate::determinacy::eval_expr($vals, $exact, $f::<f64>, $f::<num_rational::BigRational>)
    };
}
pub(crate) use expr;

/// Threshold used for sign decisions: zero in exact mode.
pub(crate) fn sign_tol(tol: &crate::tolerance::Tolerances) -> f64 {
    if tol.exact {
        0.0
    } else {
        tol.zero_tol
    }
}

pub use gali::gali_classify;

mod gali {
    use super::{Counts, Evidence, Outcome, Verdict};
    use crate::error::Result;
    use crate::models::{gali_system, GaliParams};
    use crate::poly::budan_fourier_bound;
    use crate::region::{Constraint, Relation};
    use crate::tolerance::Tolerances;

    /// Always determinate: two roots inside the unit disk and a single real
    /// root in `(1, b)`. The evidence records the Budan–Fourier count on that
    /// interval.
    pub fn gali_classify(p: &GaliParams, tol: &Tolerances) -> Result<Verdict> {
        let sys = gali_system(p)?;
        let (b, _, _) = p.coefficients();
        let p1 = sys.charpoly.eval(1.0);
        let bound = budan_fourier_bound(&sys.charpoly, 1.0, b, tol.zero_tol)
            .map(|r| r.max_roots)
            .ok();
        let condition = match bound {
            Some(n) => format!("unconditional: Budan-Fourier bound {n} on (1, b)"),
            None => "unconditional".to_string(),
        };
        Ok(Verdict::new(
            Outcome::Determinate,
            Evidence {
                condition,
                constraints: vec![
                    Constraint::new("P(1)", p1, Relation::Lt),
                    Constraint::new("b - 1", b - 1.0, Relation::Gt),
                ],
                counts: Some(Counts {
                    inside: 2,
                    outside: 1,
                    boundary: 0,
                }),
                poly: Some(sys.charpoly),
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::GaliParams;
    use crate::oracle::RootProfile;
    use crate::tolerance::Tolerances;
    use num_complex::Complex64;

    fn profile(xs: &[f64]) -> RootProfile {
        let roots: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        RootProfile::from_roots(&roots, &Tolerances::default())
    }

    #[test]
    fn blanchard_kahn_examples() {
        let v = blanchard_kahn(&profile(&[0.3107, 0.6620, 1.8048]), 1);
        assert_eq!(v.outcome, Outcome::Determinate);
        let v = blanchard_kahn(&profile(&[-1.2003, 1.2482, 2.2653]), 1);
        assert_eq!(v.outcome, Outcome::NoStableSolution);
        let v = blanchard_kahn(&profile(&[0.1, 0.2, 0.3]), 1);
        assert_eq!(v.outcome, Outcome::Indeterminate);
        let v = blanchard_kahn(&profile(&[0.1, 1.0, 3.0]), 1);
        assert_eq!(v.outcome, Outcome::Boundary);
    }

    #[test]
    fn gali_is_determinate() {
        for (sigma, k) in [(0.5, 0.3), (0.157, 0.024), (1.0, 0.3)] {
            let p = GaliParams::new(0.99, sigma, 1.2, k).unwrap();
            let v = gali_classify(&p, &Tolerances::default()).unwrap();
            assert_eq!(v.outcome, Outcome::Determinate);
            assert!(v.evidence.condition.contains("bound 1"));
        }
    }

    fn sample<S: Scalar>(v: &[S]) -> S {
        let x = v[0].clone();
        x.clone() * x - S::lit(0.1) * S::lit(100.0)
    }

    #[test]
    fn exact_and_float_expressions_agree() {
        let f = expr!(sample, &[3.0], false);
        let e = expr!(sample, &[3.0], true);
        assert_eq!(f, -1.0);
        // 0.1 is not 1/10 in binary; exactly, 100 * 0.1 is slightly above 10
        assert!(e < -1.0 && e > -1.0 - 1e-15);
        assert!(expr!(sample, &[10f64.sqrt()], true) != 0.0);
    }

    #[test]
    fn tokens() {
        assert_eq!(Outcome::NoStableSolution.token(), "no-stable-solution");
        assert_eq!(Outcome::HypothesisNotMet.to_string(), "HypothesisNotMet");
    }
}
