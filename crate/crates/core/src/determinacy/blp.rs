//! Necessary conditions for the degree-five model.

use super::{sign_tol, CertainVerdict, Certainty, Evidence};
use crate::error::Result;
use crate::models::{blp_coefficients, BLPParams};
use crate::poly::{fourier_signs_exact, fourier_table, Poly};
use crate::region::{Constraint, Relation, Truth};
use crate::tolerance::Tolerances;

/// Outcome of the necessary-condition checks. Determinacy needs exactly three
/// of the five roots inside the unit disk, hence `P(1) > 0` and an odd number
/// of real roots in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlpReport {
    pub poly: Poly,
    pub p_at_one: f64,
    pub p_at_one_positive: Truth,
    /// `phi_pi + (1 - gamma)(1 - beta) phi_y / (k (varphi + 1)) - 1`, the
    /// closed form reported alongside `P(1) > 0`; informational.
    pub reference_condition: f64,
    pub table_zero: Vec<f64>,
    pub table_one: Vec<f64>,
    pub v0: usize,
    pub v1: usize,
    /// The `v1` rule presumes `v0 = 5`.
    pub v1_rule_applicable: bool,
    pub v1_allowed: bool,
    pub verdict: CertainVerdict,
}

/// Evaluates `P(1) > 0` and the Budan–Fourier rule `v1 in {0, 2, 4}`. Never
/// asserts determinacy.
pub fn blp_necessary_check(p: &BLPParams, tol: &Tolerances) -> Result<BlpReport> {
    let poly = blp_coefficients(p)?;
    let zt = sign_tol(tol);
    let (t0, t1, v0, v1) = if tol.exact {
        let a = fourier_signs_exact(&poly, 0.0)?;
        let b = fourier_signs_exact(&poly, 1.0)?;
        (a.to_f64(), b.to_f64(), a.variations(), b.variations())
    } else {
        let a = fourier_table(&poly, 0.0, zt);
        let b = fourier_table(&poly, 1.0, zt);
        (
            a.values().to_vec(),
            b.values().to_vec(),
            a.variations(),
            b.variations(),
        )
    };
    let p1 = t1[0];
    let c1 = Constraint::new("P(1)", p1, Relation::Gt);
    let p1_truth = c1.evaluate(zt);
    let applicable = v0 == 5;
    let allowed = v1 % 2 == 0;
    let certainty = if p1_truth == Truth::False || (applicable && !allowed) {
        Certainty::NecessaryFails
    } else {
        Certainty::Inconclusive
    };
    let condition = match (p1_truth, applicable, allowed) {
        (Truth::False, _, _) => "P(1) <= 0".to_string(),
        (_, true, false) => format!("v1 = {v1} not in {{0, 2, 4}}"),
        (Truth::Undecided, _, _) => "P(1) at zero".to_string(),
        (_, false, _) => format!("P(1) > 0; v0 = {v0}, v1 rule not applicable"),
        _ => format!("P(1) > 0 and v1 = {v1}; necessary conditions hold"),
    };
    let reference = p.taylor_expression() - 1.0;
    let verdict = CertainVerdict {
        certainty,
        evidence: Evidence {
            condition,
            constraints: vec![
                c1,
                Constraint::new("reference Taylor-type condition", reference, Relation::Gt),
            ],
            counts: None,
            poly: Some(poly.clone()),
        },
    };
    Ok(BlpReport {
        poly,
        p_at_one: p1,
        p_at_one_positive: p1_truth,
        reference_condition: reference,
        table_zero: t0,
        table_one: t1,
        v0,
        v1,
        v1_rule_applicable: applicable,
        v1_allowed: allowed,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn base() -> BLPParams {
        BLPParams {
            beta: 0.99,
            eta: 0.5,
            gamma: 0.0,
            rho_r: 0.5,
            k: 0.3,
            varphi: 1.0,
            phi_y: 0.25,
            phi_pi: 1.5,
        }
    }

    #[test]
    fn reference_condition_arithmetic() {
        let r = blp_necessary_check(&base(), &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(r.reference_condition + 1.0, 1.5 + 0.01 / 0.6 * 0.25, epsilon = 1e-12);
        let weak = BLPParams {
            phi_pi: 0.9,
            phi_y: 1e-9,
            ..base()
        };
        let r = blp_necessary_check(&weak, &Tolerances::default()).unwrap();
        assert!(r.reference_condition < 0.0);
    }

    #[test]
    fn p_at_one_closed_form() {
        let p = BLPParams {
            gamma: 0.3,
            ..base()
        };
        let r = blp_necessary_check(&p, &Tolerances::default()).unwrap();
        let want = (1.0 - p.eta)
            * ((1.0 - p.beta) * (1.0 - p.gamma) * (1.0 - p.rho_r) * p.phi_y
                - p.k * (p.varphi + 1.0));
        assert_abs_diff_eq!(r.p_at_one, want, epsilon = 1e-12);
        assert_eq!(r.v0, 5);
        assert_eq!(r.verdict.certainty, Certainty::NecessaryFails);
    }

    #[test]
    fn v1_rule_needs_full_v0() {
        let r = blp_necessary_check(&base(), &Tolerances::default()).unwrap();
        // gamma = 0 makes a0 = 0, so the sequence at zero loses an entry
        assert!(r.v0 < 5);
        assert!(!r.v1_rule_applicable);
        let exact = blp_necessary_check(&base(), &Tolerances::default().with_exact(true)).unwrap();
        assert_eq!(exact.v1, r.v1);
    }
}
