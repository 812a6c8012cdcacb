//! The behavioural-model cubic `x^3 - b x^2 + c x - d`, `b, c, d > 0`.

use super::{sign_tol, CertainVerdict, Certainty, Counts, Evidence, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::models::{GabaixCubic, GabaixStructural};
use crate::oracle::real_roots_in;
use crate::poly::count_variations;
use crate::region::{Constraint, Relation, RegionEval, RegionPredicate, Truth};
use crate::tolerance::Tolerances;

fn sgn(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Coefficients of `(1 - z)^3 P((1 + z)/(1 - z))`, highest power of `z`
/// first: `(e3, e2, e1, e0)`. Roots of `P` outside the unit disk map to roots
/// with positive real part.
pub(crate) fn mobius_coefficients(g: &GabaixCubic) -> [f64; 4] {
    let GabaixCubic { b, c, d } = *g;
    let e3 = 1.0 - b + c - d;
    let e2 = 3.0 - b - c + 3.0 * d;
    let e1 = 3.0 + b - c - 3.0 * d;
    let e0 = 1.0 + b + c + d;
    [e3, e2, e1, e0]
}

/// Stability test through the Routh sequence
/// `(e3, e2, (e2 e1 - e3 e0) / e2, e0)`, whose sign changes count the roots
/// outside the unit disk. Determinate iff that count is two (one real root in
/// `(0, 1)`, two outside).
pub fn gabaix_stability_test(g: &GabaixCubic, tol: &Tolerances) -> Result<Verdict> {
    if g.validate().is_err() {
        return Err(Error::HypothesisNotMet(format!(
            "b, c, d must all be > 0 (b = {}, c = {}, d = {})",
            g.b, g.c, g.d
        )));
    }
    let zt = sign_tol(tol);
    let [e3, e2, e1, e0] = mobius_coefficients(g);
    if e3.abs() <= zt {
        return Err(Error::HypothesisNotMet(format!("P(1) = {e3:e} is zero")));
    }
    let h = e2 * e1 - e3 * e0;
    let constraints = vec![
        Constraint::new("e3", e3, Relation::Ne),
        Constraint::new("e2", e2, Relation::Le),
        Constraint::new("e2 e1 - e3 e0", h, Relation::Le),
        Constraint::new("e0", e0, Relation::Gt),
    ];
    let mut evidence = Evidence {
        constraints,
        poly: Some(g.poly()),
        ..Evidence::default()
    };
    if h.abs() <= zt {
        evidence.condition = "e2 e1 - e3 e0 at zero (pair of roots on the unit circle)".into();
        return Ok(Verdict::new(Outcome::Boundary, evidence));
    }
    let outside = if e2.abs() <= zt {
        // e2 replaced by a small positive epsilon
        if e3 > 0.0 {
            2
        } else {
            1
        }
    } else {
        count_variations([sgn(e3, zt), sgn(e2, zt), sgn(h / e2, 0.0), sgn(e0, zt)])
    };
    let outcome = match outside {
        2 => Outcome::Determinate,
        0 | 1 => Outcome::Indeterminate,
        _ => Outcome::NoStableSolution,
    };
    evidence.condition = format!("{outside} sign changes in the Routh sequence");
    evidence.counts = Some(Counts {
        inside: 3 - outside,
        outside,
        boundary: 0,
    });
    Ok(Verdict::new(outcome, evidence))
}

/// One-sided checks on the real root in `(0, 1)`:
/// `P(1) < 0` rules out a single real root there, while `P(1) > 0` together
/// with `3 - 2b + c <= 0` or `b >= 3` (or with `b - c > 0`) is the stated
/// sufficient condition. A sufficient condition is only reported as holding
/// once Budan–Fourier subdivision of `(0, 1)` isolates exactly one root.
pub fn sufficient_linear_check(g: &GabaixCubic, tol: &Tolerances) -> Result<CertainVerdict> {
    if g.validate().is_err() {
        return Err(Error::HypothesisNotMet(format!(
            "b, c, d must all be > 0 (b = {}, c = {}, d = {})",
            g.b, g.c, g.d
        )));
    }
    let zt = sign_tol(tol);
    let GabaixCubic { b, c, .. } = *g;
    let p1 = g.p_at_one();
    let constraints = vec![
        Constraint::new("P(1)", p1, Relation::Gt),
        Constraint::new("3 - 2b + c", 3.0 - 2.0 * b + c, Relation::Le),
        Constraint::new("b - 3", b - 3.0, Relation::Ge),
        Constraint::new("b - c", b - c, Relation::Gt),
    ];
    let holds = |i: usize| constraints[i].evaluate(zt) == Truth::True;
    let mut evidence = Evidence {
        constraints: constraints.clone(),
        poly: Some(g.poly()),
        ..Evidence::default()
    };
    if p1 < -zt {
        evidence.condition = "P(1) < 0".into();
        return Ok(CertainVerdict {
            certainty: Certainty::NecessaryFails,
            evidence,
        });
    }
    let part_iii = holds(0) && (holds(1) || holds(2));
    let part_iv = holds(0) && holds(3);
    let fired = match (part_iii, part_iv) {
        (true, true) => "(iii) and (iv)",
        (true, false) => "(iii)",
        (false, true) => "(iv)",
        (false, false) => {
            evidence.condition = if holds(0) {
                "P(1) > 0 but no linear condition holds".into()
            } else {
                "P(1) at zero".into()
            };
            return Ok(CertainVerdict {
                certainty: Certainty::Inconclusive,
                evidence,
            });
        }
    };
    let isolated = real_roots_in(&g.poly(), 0.0, 1.0, tol.zero_tol);
    let certainty = match &isolated {
        Ok(r) if r.len() == 1 => {
            evidence.condition = format!("{fired}: single real root in (0, 1)");
            Certainty::SufficientHolds
        }
        Ok(r) => {
            evidence.condition = format!("{fired} fired but (0, 1) holds {} real roots", r.len());
            Certainty::Inconclusive
        }
        Err(e) => {
            evidence.condition = format!("{fired} fired; isolation failed: {e}");
            Certainty::Inconclusive
        }
    };
    Ok(CertainVerdict {
        certainty,
        evidence,
    })
}

/// Membership of a structural point in the stated outer (necessary) and
/// inner (sufficient) layers of the determinacy region.
#[derive(Debug, Clone, PartialEq)]
pub struct GabaixRegionReport {
    pub necessary: RegionPredicate,
    pub inner_b_minus_c: RegionPredicate,
    pub inner_b: RegionPredicate,
    pub inner_sum: RegionPredicate,
    pub evaluations: [RegionEval; 4],
    pub certainty: Certainty,
    /// Some region inequality is within `zero_tol` of equality.
    pub boundary: bool,
}

/// `(1 - beta_f - alpha chi (1 - rho))(1 - M + sigma phi_x) + k sigma (phi_pi - 1)`
pub(crate) fn structural_p1(s: &GabaixStructural) -> f64 {
    (1.0 - s.beta_f - s.alpha * s.chi * (1.0 - s.rho)) * (1.0 - s.m + s.sigma * s.phi_x)
        + s.k * s.sigma * (s.phi_pi - 1.0)
}

pub(crate) fn structural_b_minus_c(s: &GabaixStructural) -> f64 {
    let mbf = s.m * s.beta_f;
    let ks = s.k * s.sigma;
    s.sigma * ((s.beta_f - 1.0) + s.beta * (s.eta - 1.0) - s.eta * s.alpha_f * s.rho * s.chi) / mbf
        - ks / mbf * s.phi_pi
        + ((s.eta - 1.0) * (ks + 1.0 + s.beta + s.m - s.m * s.beta_f)
            + s.eta * (s.alpha_f * s.chi * (s.rho * (s.m - 1.0) - s.m) - 1.0)
            + s.m
            + s.beta_f
            + ks)
            / mbf
}

pub(crate) fn structural_b(s: &GabaixStructural) -> f64 {
    s.sigma / s.m * s.phi_x
        + ((1.0 - s.eta) * s.m * s.beta_f
            + s.eta * s.alpha_f * s.rho * s.chi * s.m
            + s.m
            + s.beta_f
            + s.k * s.sigma)
            / (s.m * s.beta_f)
}

/// Evaluates the region inequalities at a structural point.
pub fn gabaix_region_membership(
    s: &GabaixStructural,
    tol: &Tolerances,
) -> Result<GabaixRegionReport> {
    s.validate()?;
    let zt = tol.zero_tol;
    let p1 = structural_p1(s);
    let bmc = structural_b_minus_c(s);
    let b = structural_b(s);
    let outer = Constraint::new("P(1) expression", p1, Relation::Ge);
    let necessary = RegionPredicate::new("necessary", vec![outer.clone()]);
    let inner_b_minus_c = RegionPredicate::new(
        "b - c > 0",
        vec![outer.clone(), Constraint::new("b - c", bmc, Relation::Gt)],
    );
    let inner_b = RegionPredicate::new(
        "b >= 3",
        vec![outer.clone(), Constraint::new("b - 3", b - 3.0, Relation::Ge)],
    );
    let inner_sum = RegionPredicate::new(
        "(b - c) + b >= 3",
        vec![outer, Constraint::new("(b - c) + b - 3", bmc + b - 3.0, Relation::Ge)],
    );
    let evaluations = [
        necessary.evaluate(zt),
        inner_b_minus_c.evaluate(zt),
        inner_b.evaluate(zt),
        inner_sum.evaluate(zt),
    ];
    let certainty = if evaluations[0].truth == Truth::False {
        Certainty::NecessaryFails
    } else if evaluations[1..].iter().any(|e| e.truth == Truth::True) {
        Certainty::SufficientHolds
    } else {
        Certainty::Inconclusive
    };
    let boundary = evaluations.iter().any(|e| e.touches_zero);
    Ok(GabaixRegionReport {
        necessary,
        inner_b_minus_c,
        inner_b,
        inner_sum,
        evaluations,
        certainty,
        boundary,
    })
}
