//! Closed-form classifiers for the three Bullard–Mitra rules.

use super::{expr, sign_tol, CertainVerdict, Certainty, Evidence, Outcome, Scalar, Verdict};
use crate::error::Result;
use crate::models::{
    bm_forward_system, bm_inertial_system, bm_noninertial_system, BMForwardParams,
    BMInertialParams, BMNonInertialParams,
};
use crate::region::{Constraint, Relation, RegionPredicate, Truth};
use crate::tolerance::Tolerances;

fn take<S: Clone, const N: usize>(v: &[S]) -> [S; N] {
    std::array::from_fn(|i| v[i].clone())
}

fn one<S: Scalar>() -> S {
    S::lit(1.0)
}

fn lit<S: Scalar>(v: f64) -> S {
    S::lit(v)
}

// non-inertial rule; variables (k, sigma, beta, phi_x, phi_pi)

fn ni_t1<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, p] = take(v);
    k * (p - one()) + (x - lit::<S>(2.0) * s) * (one::<S>() + b)
}

fn ni_t2<S: Scalar>(v: &[S]) -> S {
    let [k, _, b, x, p] = take(v);
    k * (p - one()) + x * (one::<S>() - b)
}

fn ni_side_minus<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, _] = take(v);
    b.clone() * x - (s * (lit::<S>(3.0) + lit::<S>(5.0) * b) + lit::<S>(2.0) * k)
}

fn ni_side_plus<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, _] = take(v);
    b.clone() * x - (s * (b - one()) - lit::<S>(2.0) * k)
}

// inertial rule; variables (k, sigma, beta, phi_x, phi_pi, phi_r)

fn in_hyp<S: Scalar>(v: &[S]) -> S {
    let [k, s, _, x, p, r] = take(v);
    s * (k * p + x) - r
}

fn in_u1<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, p, r] = take(v);
    let ks = k * s.clone();
    ks.clone() * (p - one()) + (s * x - lit(2.0)) * (one::<S>() + b.clone())
        - r * (lit::<S>(2.0) * b + ks + lit(2.0))
}

fn in_u2<S: Scalar>(v: &[S]) -> S {
    let [k, _, b, x, p, r] = take(v);
    k * (p - one() + r) + x * (one::<S>() - b)
}

fn in_side_minus<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, _, r] = take(v);
    let ks = k * s.clone();
    s * b.clone() * x
        - (lit::<S>(3.0)
            + lit::<S>(5.0) * b.clone()
            + lit::<S>(2.0) * ks.clone()
            + r * (one::<S>() + lit::<S>(3.0) * b + ks))
}

fn in_side_plus<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, x, _, r] = take(v);
    let ks = k * s.clone();
    s * b.clone() * x
        - (b.clone() - lit::<S>(2.0) * ks.clone() - one() + r * (one::<S>() + ks - b))
}

// forward rule; variables (k, sigma, beta, phi_x, phi_pi, phi_r)

fn fw_q<S: Scalar>(v: &[S]) -> S {
    let [_, s, _, x, _, _] = take(v);
    one::<S>() - x * s
}

fn fw_pi<S: Scalar>(v: &[S]) -> S {
    let [_, _, _, _, p, _] = take(v);
    one::<S>() - p
}

/// `phi_r (1 + (1 + phi_r)(beta + k sigma))`
fn fw_r_term<S: Scalar>(k: &S, s: &S, b: &S, r: &S) -> S {
    r.clone() * (one::<S>() + (one::<S>() + r.clone()) * (b.clone() + k.clone() * s.clone()))
}

fn fw_strict<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, _, p, r] = take(v);
    let q = fw_q(v);
    let rt = fw_r_term(&k, &s, &b, &r);
    q * (b.clone() * (one::<S>() - b.clone()) - rt)
        + b.clone() * (b.clone() + r * (b + one()) + k * s * (one::<S>() - p))
}

fn fw_d1<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, _, p, r] = take(v);
    let q = fw_q(v);
    let rt = fw_r_term(&k, &s, &b, &r);
    q * (b.clone() * (lit::<S>(2.0) - lit::<S>(3.0) * b.clone()) - rt)
        + b.clone()
            * (lit::<S>(2.0) * b * (one::<S>() + r) + lit::<S>(2.0) * k * s * (one::<S>() - p))
}

fn fw_d2<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, _, p, r] = take(v);
    let q = fw_q(v);
    q * (one::<S>() - lit::<S>(3.0) * b.clone()) + b * (one::<S>() + r) + k * s * (one::<S>() - p)
}

fn fw_d3<S: Scalar>(v: &[S]) -> S {
    let [k, s, b, _, p, r] = take(v);
    let q = fw_q(v);
    let ks = k * s;
    q * (b.clone() - r.clone() - (one::<S>() + r.clone()) * (b.clone() + ks.clone()))
        + b.clone() * (b * (one::<S>() + r) + ks * (one::<S>() - p))
}

struct Disjunct {
    label: &'static str,
    region: RegionPredicate,
    /// Holds only with an eigenvalue on the unit circle.
    on_circle: bool,
}

fn c(label: &str, v: f64, rel: Relation) -> Constraint {
    Constraint::new(label, v, rel)
}

/// Shared decision for the two rules whose disjuncts follow the same sign
/// pattern in `(P(-1), P(1))`: `(i)`, `(iii)` strict, `(ii)`, `(iv)` on the
/// circle.
fn decide(
    t1: (&str, f64),
    t2: (&str, f64),
    side_minus: f64,
    side_plus: f64,
    zt: f64,
    vi_outcome: Outcome,
    ix_outcome: Outcome,
) -> (Outcome, String) {
    let (n1, v1) = t1;
    let (n2, v2) = t2;
    let disjuncts = [
        Disjunct {
            label: "(i)",
            region: RegionPredicate::new(
                "(i)",
                vec![c(n1, v1, Relation::Lt), c(n2, v2, Relation::Gt)],
            ),
            on_circle: false,
        },
        Disjunct {
            label: "(ii)",
            region: RegionPredicate::new(
                "(ii)",
                vec![
                    c(n1, v1, Relation::Eq),
                    c("P'(-1)", side_minus, Relation::Ne),
                    c(n2, v2, Relation::Lt),
                ],
            ),
            on_circle: true,
        },
        Disjunct {
            label: "(iii)",
            region: RegionPredicate::new(
                "(iii)",
                vec![c(n1, v1, Relation::Gt), c(n2, v2, Relation::Lt)],
            ),
            on_circle: false,
        },
        Disjunct {
            label: "(iv)",
            region: RegionPredicate::new(
                "(iv)",
                vec![
                    c(n1, v1, Relation::Gt),
                    c(n2, v2, Relation::Eq),
                    c("P'(1)", side_plus, Relation::Ne),
                ],
            ),
            on_circle: true,
        },
    ];
    let fired: Vec<&Disjunct> = disjuncts
        .iter()
        .filter(|d| d.region.evaluate(zt).truth == Truth::True)
        .collect();
    match fired.as_slice() {
        [d] if !d.on_circle => (Outcome::Determinate, format!("disjunct {}", d.label)),
        [d] => (
            Outcome::Boundary,
            format!("disjunct {} (eigenvalue on the unit circle)", d.label),
        ),
        [_, _, ..] => (Outcome::Boundary, "more than one disjunct holds".into()),
        [] => {
            if v1.abs() <= zt || v2.abs() <= zt {
                (Outcome::Boundary, "no disjunct; decisive expression at zero".into())
            } else if v1 < 0.0 && v2 < 0.0 {
                (vi_outcome, "no disjunct; case (vi)".into())
            } else if v1 > 0.0 && v2 > 0.0 {
                (ix_outcome, "no disjunct; case (ix)".into())
            } else {
                (Outcome::Boundary, "no disjunct; signs undecided".into())
            }
        }
    }
}

/// Non-inertial rule: determinate iff exactly one of the four disjuncts in
/// `T1 = k(phi_pi - 1) + (phi_x - 2 sigma)(1 + beta)` and
/// `T2 = k(phi_pi - 1) + phi_x (1 - beta)` holds.
pub fn bm_noninertial_classify(p: &BMNonInertialParams, tol: &Tolerances) -> Result<Verdict> {
    let sys = bm_noninertial_system(p)?;
    let vals = [p.k, p.sigma, p.beta, p.phi_x, p.phi_pi];
    let ex = tol.exact;
    let t1 = expr!(ni_t1, &vals, ex);
    let t2 = expr!(ni_t2, &vals, ex);
    let sm = expr!(ni_side_minus, &vals, ex);
    let sp = expr!(ni_side_plus, &vals, ex);
    // T1 and T2 are positive multiples of P(-1) and P(1) for B^-1; case (vi)
    // puts two roots of B^-1 inside, i.e. two explosive roots of B
    let (outcome, condition) = decide(
        ("T1", t1),
        ("T2", t2),
        sm,
        sp,
        sign_tol(tol),
        Outcome::NoStableSolution,
        Outcome::Indeterminate,
    );
    Ok(Verdict::new(
        outcome,
        Evidence {
            condition,
            constraints: vec![
                c("T1", t1, Relation::Lt),
                c("T2", t2, Relation::Gt),
                c("P'(-1) side", sm, Relation::Ne),
                c("P'(1) side", sp, Relation::Ne),
            ],
            counts: None,
            poly: Some(sys.charpoly),
        },
    ))
}

/// Inertial rule: needs `phi_r < sigma (k phi_pi + phi_x)`; then determinate
/// iff one of the four disjuncts in `U1 = beta P(-1)` and
/// `U2 = beta P(1) / sigma` holds.
pub fn bm_inertial_classify(p: &BMInertialParams, tol: &Tolerances) -> Result<Verdict> {
    let sys = bm_inertial_system(p)?;
    let vals = [p.k, p.sigma, p.beta, p.phi_x, p.phi_pi, p.phi_r];
    let ex = tol.exact;
    let zt = sign_tol(tol);
    let h = expr!(in_hyp, &vals, ex);
    let hyp = c("sigma(k phi_pi + phi_x) - phi_r", h, Relation::Gt);
    if hyp.evaluate(zt) != Truth::True {
        return Ok(Verdict::new(
            Outcome::HypothesisNotMet,
            Evidence {
                condition: "phi_r >= sigma(k phi_pi + phi_x)".into(),
                constraints: vec![hyp],
                counts: None,
                poly: Some(sys.charpoly),
            },
        ));
    }
    let u1 = expr!(in_u1, &vals, ex);
    let u2 = expr!(in_u2, &vals, ex);
    let sm = expr!(in_side_minus, &vals, ex);
    let sp = expr!(in_side_plus, &vals, ex);
    let (outcome, condition) = decide(
        ("U1", u1),
        ("U2", u2),
        sm,
        sp,
        zt,
        Outcome::Indeterminate,
        Outcome::NoStableSolution,
    );
    Ok(Verdict::new(
        outcome,
        Evidence {
            condition,
            constraints: vec![
                hyp,
                c("U1", u1, Relation::Lt),
                c("U2", u2, Relation::Gt),
                c("P'(-1) side", sm, Relation::Ne),
                c("P'(1) side", sp, Relation::Ne),
            ],
            counts: None,
            poly: Some(sys.charpoly),
        },
    ))
}

/// Forward-expectations rule: sufficient conditions for exactly one
/// eigenvalue in `(0, 1)`. Never claims indeterminacy.
pub fn bm_forward_classify(p: &BMForwardParams, tol: &Tolerances) -> Result<CertainVerdict> {
    let sys = bm_forward_system(p, tol.zero_tol)?;
    let vals = [p.k, p.sigma, p.beta, p.phi_x, p.phi_pi, p.phi_r];
    let ex = tol.exact;
    let zt = sign_tol(tol);
    let hypotheses = RegionPredicate::new(
        "hypotheses",
        vec![
            c("1 - sigma phi_x", expr!(fw_q, &vals, ex), Relation::Gt),
            c("1 - phi_pi", expr!(fw_pi, &vals, ex), Relation::Ge),
            c("strict", expr!(fw_strict, &vals, ex), Relation::Lt),
        ],
    );
    let alternatives = [
        c("d1", expr!(fw_d1, &vals, ex), Relation::Ge),
        c("d2", expr!(fw_d2, &vals, ex), Relation::Ge),
        c("d3", expr!(fw_d3, &vals, ex), Relation::Gt),
    ];
    let h = hypotheses.evaluate(zt);
    let alt = alternatives
        .iter()
        .fold(Truth::False, |acc, a| acc.or(a.evaluate(zt)));
    let fired: Vec<&str> = alternatives
        .iter()
        .filter(|a| a.evaluate(zt) == Truth::True)
        .map(|a| a.label.as_str())
        .collect();
    let (certainty, condition) = match h.truth.and(alt) {
        Truth::True => (
            Certainty::SufficientHolds,
            format!("hypotheses hold with {}", fired.join(", ")),
        ),
        Truth::Undecided => (
            Certainty::Inconclusive,
            "a hypothesis is at zero".to_string(),
        ),
        Truth::False => {
            let failed: Vec<&str> = hypotheses
                .constraints
                .iter()
                .filter(|k| k.evaluate(zt) == Truth::False)
                .map(|k| k.label.as_str())
                .collect();
            let why = if failed.is_empty() {
                "no alternative inequality holds".to_string()
            } else {
                format!("fails: {}", failed.join(", "))
            };
            (Certainty::Inconclusive, why)
        }
    };
    let mut constraints = hypotheses.constraints;
    constraints.extend(alternatives);
    Ok(CertainVerdict {
        certainty,
        evidence: Evidence {
            condition,
            constraints,
            counts: None,
            poly: Some(sys.charpoly),
        },
    })
}
