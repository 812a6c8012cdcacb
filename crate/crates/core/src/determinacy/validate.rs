//! Analytic classifier versus numeric oracle.

use std::fmt;

use super::{
    blanchard_kahn, blp_necessary_check, bm_forward_classify, bm_inertial_classify,
    bm_noninertial_classify, gabaix_stability_test, gali_classify, BlpReport, CertainVerdict,
    Certainty, Evidence, Outcome, Verdict,
};
use crate::error::{Error, Result};
use crate::family::{Family, ModelPoint};
use crate::models::{GabaixCubic, ModelSystem};
use crate::oracle::{all_roots, RootProfile, RootSet};
use crate::region::Relation;
use crate::tolerance::Tolerances;

/// What the analytic side of a family produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Analytic {
    /// A necessary-and-sufficient classification.
    Exact(Verdict),
    /// A sufficient-only claim of a single real root in `(0, 1)`.
    OneSided(CertainVerdict),
    Necessary(Box<BlpReport>),
}

impl Analytic {
    pub fn condition(&self) -> &str {
        match self {
            Analytic::Exact(v) => &v.evidence.condition,
            Analytic::OneSided(c) => &c.evidence.condition,
            Analytic::Necessary(r) => &r.verdict.evidence.condition,
        }
    }

    pub fn evidence(&self) -> &Evidence {
        match self {
            Analytic::Exact(v) => &v.evidence,
            Analytic::OneSided(c) => &c.evidence,
            Analytic::Necessary(r) => &r.verdict.evidence,
        }
    }

    /// Smallest `|expr|` over the sign conditions (`!=` side conditions
    /// excluded).
    pub fn margin(&self) -> f64 {
        self.evidence()
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Ne)
            .map(|c| c.expr.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkipReason {
    Boundary,
    NoClaim,
    HypothesisNotMet,
    OracleFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Agreement {
    Agree,
    Disagree,
    Skipped(SkipReason),
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Agree => f.write_str("Agree"),
            Agreement::Disagree => f.write_str("Disagree"),
            Agreement::Skipped(r) => write!(f, "Skipped({r:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub family: Family,
    pub system: ModelSystem,
    pub analytic: Analytic,
    /// Roots of the characteristic polynomial as built.
    pub roots: RootSet,
    /// Profile of the decisive eigenvalues.
    pub profile: RootProfile,
    pub oracle: Verdict,
    pub status: Agreement,
}

fn hypothesis_verdict(msg: String, g: &GabaixCubic) -> Verdict {
    Verdict::new(
        Outcome::HypothesisNotMet,
        Evidence {
            condition: msg,
            poly: Some(g.poly()),
            ..Evidence::default()
        },
    )
}

fn gabaix(g: &GabaixCubic, tol: &Tolerances) -> Result<Verdict> {
    match gabaix_stability_test(g, tol) {
        Err(Error::HypothesisNotMet(msg)) => Ok(hypothesis_verdict(msg, g)),
        other => other,
    }
}

/// Runs the analytic classifier of the point's family.
pub fn classify(point: &ModelPoint, tol: &Tolerances) -> Result<Analytic> {
    Ok(match point {
        ModelPoint::Gali(p) => Analytic::Exact(gali_classify(p, tol)?),
        ModelPoint::BmNonInertial(p) => Analytic::Exact(bm_noninertial_classify(p, tol)?),
        ModelPoint::BmInertial(p) => Analytic::Exact(bm_inertial_classify(p, tol)?),
        ModelPoint::BmForward(p) => Analytic::OneSided(bm_forward_classify(p, tol)?),
        ModelPoint::GabaixCubic(g) => Analytic::Exact(gabaix(g, tol)?),
        ModelPoint::GabaixMatrix(m) => Analytic::Exact(gabaix(&GabaixCubic::from_matrix(m), tol)?),
        ModelPoint::Blp(p) => Analytic::Necessary(Box::new(blp_necessary_check(p, tol)?)),
    })
}

fn compare(
    analytic: &Analytic,
    roots: &RootSet,
    profile: &RootProfile,
    oracle: &Verdict,
    required_inside: usize,
    tol: &Tolerances,
) -> Agreement {
    if !roots.converged {
        return Agreement::Skipped(SkipReason::OracleFailed);
    }
    let near_circle =
        oracle.outcome == Outcome::Boundary || profile.circle_distance <= tol.boundary_tol;
    let skip_band = near_circle || (!tol.exact && analytic.margin() <= tol.boundary_tol);
    match analytic {
        Analytic::Exact(v) => match v.outcome {
            Outcome::HypothesisNotMet => Agreement::Skipped(SkipReason::HypothesisNotMet),
            Outcome::Boundary => Agreement::Skipped(SkipReason::Boundary),
            _ if skip_band => Agreement::Skipped(SkipReason::Boundary),
            o if o == oracle.outcome => Agreement::Agree,
            _ => Agreement::Disagree,
        },
        Analytic::OneSided(c) => match c.certainty {
            Certainty::SufficientHolds => {
                let near_ends = roots.roots.iter().any(|z| {
                    z.norm() <= tol.boundary_tol || (z - 1.0).norm() <= tol.boundary_tol
                });
                if near_ends || analytic.margin() <= tol.boundary_tol {
                    Agreement::Skipped(SkipReason::Boundary)
                } else if roots.count_real_in(0.0, 1.0, tol.reality_tol) == 1 {
                    Agreement::Agree
                } else {
                    Agreement::Disagree
                }
            }
            _ => Agreement::Skipped(SkipReason::NoClaim),
        },
        Analytic::Necessary(r) => match r.verdict.certainty {
            Certainty::NecessaryFails if near_circle => Agreement::Skipped(SkipReason::Boundary),
            Certainty::NecessaryFails => {
                if profile.inside == required_inside {
                    Agreement::Disagree
                } else {
                    Agreement::Agree
                }
            }
            _ => Agreement::Skipped(SkipReason::NoClaim),
        },
    }
}

/// Builds the system, classifies it analytically and numerically, and
/// compares. Points within the boundary band (a root modulus or a decisive
/// expression within `boundary_tol` of its critical value) are skipped.
pub fn cross_validate(point: &ModelPoint, tol: &Tolerances) -> Result<AgreementReport> {
    let system = point.system(tol)?;
    let analytic = classify(point, tol)?;
    let roots = all_roots(&system.charpoly)?;
    let decisive = if system.poly_of_inverse {
        roots.reciprocals()
    } else {
        roots.clone()
    };
    let profile = RootProfile::from_roots(&decisive.roots, tol);
    let oracle = blanchard_kahn(&profile, system.required_outside);
    let status = compare(
        &analytic,
        &roots,
        &profile,
        &oracle,
        system.required_inside(),
        tol,
    );
    Ok(AgreementReport {
        family: point.family(),
        system,
        analytic,
        roots,
        profile,
        oracle,
        status,
    })
}
