//! Randomised verification: analytic-versus-oracle cross validation per
//! family plus the root-location property suites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::determinacy::{cross_validate, cubic_profile, Agreement, SkipReason};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::oracle::{all_roots, eigenvalues_3x3, RootProfile};
use crate::poly::{budan_fourier_bound, reciprocal_poly, Poly};
use crate::sampling::{draw_rng, random_matrix, random_poly, sample_point};
use crate::tolerance::Tolerances;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Family(Family),
    /// Budan–Fourier bound against oracle root counts on random polynomials.
    BudanFourier,
    /// Unique explosive eigenvalue of `A` against unique stable root of the
    /// reciprocal polynomial.
    Reciprocal,
    /// The case analysis of `x^3 - b x^2 + c x + d` against the oracle.
    CubicCases,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        let mut v: Vec<Suite> = Family::ALL.into_iter().map(Suite::Family).collect();
        v.extend([Suite::BudanFourier, Suite::Reciprocal, Suite::CubicCases]);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Family(f) => f.name(),
            Suite::BudanFourier => "budan-fourier",
            Suite::Reciprocal => "reciprocal",
            Suite::CubicCases => "cubic-cases",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::Family(_) => 0,
            Suite::BudanFourier => 101,
            Suite::Reciprocal => 102,
            Suite::CubicCases => 103,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::all()
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// One evaluated draw.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub status: Agreement,
    /// Description of the draw, filled for disagreements.
    pub note: String,
}

impl Check {
    fn skip(reason: SkipReason) -> Self {
        Check {
            status: Agreement::Skipped(reason),
            note: String::new(),
        }
    }

    fn from_bool(ok: bool, note: impl FnOnce() -> String) -> Self {
        if ok {
            Check {
                status: Agreement::Agree,
                note: String::new(),
            }
        } else {
            Check {
                status: Agreement::Disagree,
                note: note(),
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub agree: usize,
    pub disagree: usize,
    pub skipped: BTreeMap<String, usize>,
    /// Up to five example disagreements.
    pub examples: Vec<String>,
}

impl Tally {
    pub fn skipped_total(&self) -> usize {
        self.skipped.values().sum()
    }

    pub fn total(&self) -> usize {
        self.agree + self.disagree + self.skipped_total()
    }

    fn add(&mut self, c: Check) {
        match c.status {
            Agreement::Agree => self.agree += 1,
            Agreement::Disagree => {
                self.disagree += 1;
                if self.examples.len() < 5 {
                    self.examples.push(c.note);
                }
            }
            Agreement::Skipped(r) => *self.skipped.entry(format!("{r:?}")).or_default() += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub tallies: Vec<(Suite, Tally)>,
}

impl VerifyReport {
    pub fn disagreements(&self) -> usize {
        self.tallies.iter().map(|(_, t)| t.disagree).sum()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} samples {}", self.seed, self.samples)?;
        writeln!(
            f,
            "{:<16} {:>8} {:>9} {:>8}  skip reasons",
            "suite", "agree", "disagree", "skipped"
        )?;
        for (s, t) in &self.tallies {
            let reasons: Vec<String> = t.skipped.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                f,
                "{:<16} {:>8} {:>9} {:>8}  {}",
                s.name(),
                t.agree,
                t.disagree,
                t.skipped_total(),
                reasons.join(" ")
            )?;
            for e in &t.examples {
                writeln!(f, "  disagreement: {e}")?;
            }
        }
        write!(f, "total disagreements: {}", self.disagreements())
    }
}

fn check_family(family: Family, seed: u64, index: u64, tol: &Tolerances) -> Check {
    let point = sample_point(family, seed, index);
    match cross_validate(&point, tol) {
        Ok(r) => {
            let status = r.status;
            Check {
                status,
                note: if status == Agreement::Disagree {
                    format!(
                        "{:?}: analytic {} vs oracle {}",
                        point.params(),
                        r.analytic.condition(),
                        r.oracle.outcome
                    )
                } else {
                    String::new()
                },
            }
        }
        Err(_) => Check::skip(SkipReason::OracleFailed),
    }
}

/// Roots near a point in the complex plane make counts there ambiguous.
fn near(roots: &[Complex64], x: f64, band: f64) -> bool {
    roots.iter().any(|z| (z - x).norm() <= band)
}

/// Nonreal roots close to the real axis make real-root counts ambiguous.
fn near_real_axis(roots: &[Complex64], tol: &Tolerances) -> bool {
    roots
        .iter()
        .any(|z| z.im.abs() > tol.reality_tol && z.im.abs() <= tol.boundary_tol.max(1e-6))
}

fn real_in(roots: &[Complex64], a: f64, b: f64, tol: &Tolerances) -> usize {
    roots
        .iter()
        .filter(|z| z.im.abs() <= tol.reality_tol && z.re > a && z.re < b)
        .count()
}

/// Budan–Fourier soundness on one random polynomial and interval.
pub fn check_budan_fourier(p: &Poly, a: f64, b: f64, tol: &Tolerances) -> Check {
    let bound = match budan_fourier_bound(p, a, b, tol.zero_tol) {
        Ok(bd) => bd,
        Err(Error::DegenerateEndpoint { .. }) => return Check::skip(SkipReason::Boundary),
        Err(_) => return Check::skip(SkipReason::HypothesisNotMet),
    };
    let r = if p.degree() == 0 {
        0
    } else {
        let rs = match all_roots(p) {
            Ok(rs) if rs.converged => rs,
            _ => return Check::skip(SkipReason::OracleFailed),
        };
        let band = tol.boundary_tol * (1.0 + a.abs().max(b.abs()));
        if near(&rs.roots, a, band) || near(&rs.roots, b, band) || near_real_axis(&rs.roots, tol)
        {
            return Check::skip(SkipReason::Boundary);
        }
        real_in(&rs.roots, a, b, tol)
    };
    let parity_ok = !bound.parity_fixed || (bound.max_roots - r.min(bound.max_roots)) % 2 == 0;
    Check::from_bool(r <= bound.max_roots && parity_ok, || {
        format!("{p} on ({a}, {b}): bound {} roots {r}", bound.max_roots)
    })
}

fn draw_budan_fourier(seed: u64, index: u64, tol: &Tolerances) -> Check {
    let mut rng = draw_rng(seed, Suite::BudanFourier.salt(), index);
    let p = random_poly(&mut rng, 6, 10.0);
    let x: f64 = rng.random_range(-5.0..5.0);
    let y: f64 = rng.random_range(-5.0..5.0);
    if x == y {
        return Check::skip(SkipReason::Boundary);
    }
    check_budan_fourier(&p, x.min(y), x.max(y), tol)
}

fn draw_reciprocal(seed: u64, index: u64, tol: &Tolerances) -> Check {
    let mut rng = draw_rng(seed, Suite::Reciprocal.salt(), index);
    let m = random_matrix(&mut rng, 2.0);
    if m.det().abs() < 1e-3 {
        return Check::skip(SkipReason::HypothesisNotMet);
    }
    let direct = match eigenvalues_3x3(&m) {
        Ok(rs) if rs.converged => rs,
        _ => return Check::skip(SkipReason::OracleFailed),
    };
    let q = match reciprocal_poly(&m.char_poly(), tol.zero_tol) {
        Ok(q) => q,
        Err(_) => return Check::skip(SkipReason::HypothesisNotMet),
    };
    let inverse = match all_roots(&q) {
        Ok(rs) if rs.converged => rs,
        _ => return Check::skip(SkipReason::OracleFailed),
    };
    let pa = RootProfile::from_roots(&direct.roots, tol);
    let pi = RootProfile::from_roots(&inverse.roots, tol);
    if pa.circle_distance <= tol.boundary_tol || pi.circle_distance <= tol.boundary_tol {
        return Check::skip(SkipReason::Boundary);
    }
    Check::from_bool((pa.outside == 1) == (pi.inside == 1), || {
        format!(
            "{:?}: A has {} outside, reciprocal has {} inside",
            m.rows, pa.outside, pi.inside
        )
    })
}

/// Checks the one-negative-root statement, the `(-1, 0)` biconditional and
/// the asserted layout of the selected case.
pub fn check_cubic(b: f64, c: f64, d: f64, tol: &Tolerances) -> Check {
    let prof = match cubic_profile(b, c, d, tol) {
        Ok(p) => p,
        Err(_) => return Check::skip(SkipReason::HypothesisNotMet),
    };
    let p = Poly::from_descending(&[1.0, -b, c, d]);
    let rs = match all_roots(&p) {
        Ok(rs) if rs.converged => rs,
        _ => return Check::skip(SkipReason::OracleFailed),
    };
    let profile = RootProfile::from_roots(&rs.roots, tol);
    if profile.circle_distance <= tol.boundary_tol
        || near(&rs.roots, 0.0, tol.boundary_tol)
        || near_real_axis(&rs.roots, tol)
        || prof.p_minus_one.abs() <= tol.boundary_tol
        || prof.p_one.abs() <= tol.boundary_tol
    {
        return Check::skip(SkipReason::Boundary);
    }
    let negative = real_in(&rs.roots, f64::NEG_INFINITY, 0.0, tol);
    let in_m1_0 = real_in(&rs.roots, -1.0, 0.0, tol);
    let one_negative = negative == 1;
    let biconditional = prof
        .root_in_minus_one_zero
        .is_none_or(|claim| claim == (in_m1_0 == 1));
    let layout_ok = prof.layout.is_none_or(|l| {
        l.inside == profile.inside && l.outside == profile.outside && l.boundary == profile.boundary
    });
    Check::from_bool(one_negative && biconditional && layout_ok, || {
        format!(
            "b={b} c={c} d={d}: {} negative roots, {in_m1_0} in (-1,0), {} vs oracle {}/{}/{}",
            negative, prof.case, profile.inside, profile.outside, profile.boundary
        )
    })
}

fn draw_cubic(seed: u64, index: u64, tol: &Tolerances) -> Check {
    let mut rng = draw_rng(seed, Suite::CubicCases.salt(), index);
    let b = rng.random_range(0.0..6.0);
    let c = rng.random_range(-6.0..6.0);
    let d = rng.random_range(0.0..4.0);
    check_cubic(b, c, d, tol)
}

/// Evaluates draw `index` of a suite.
pub fn run_check(suite: Suite, seed: u64, index: u64, tol: &Tolerances) -> Check {
    match suite {
        Suite::Family(f) => check_family(f, seed, index, tol),
        Suite::BudanFourier => draw_budan_fourier(seed, index, tol),
        Suite::Reciprocal => draw_reciprocal(seed, index, tol),
        Suite::CubicCases => draw_cubic(seed, index, tol),
    }
}

/// Runs `samples` draws of each suite. Draws run in parallel; tallies do not
/// depend on scheduling.
pub fn verify(suites: &[Suite], samples: usize, seed: u64, tol: &Tolerances) -> Result<VerifyReport> {
    if samples == 0 {
        return Err(Error::invalid("samples", "must be >= 1"));
    }
    let tallies = suites
        .iter()
        .map(|&s| {
            let checks: Vec<Check> = (0..samples as u64)
                .into_par_iter()
                .map(|i| run_check(s, seed, i, tol))
                .collect();
            let mut t = Tally::default();
            for c in checks {
                t.add(c);
            }
            (s, t)
        })
        .collect();
    Ok(VerifyReport {
        seed,
        samples,
        tallies,
    })
}
