//! Human-readable single-point report, four decimals throughout.

use std::fmt::Write;

use nkdet_core::determinacy::Analytic;
use nkdet_core::family::PointReport;
use nkdet_core::tolerance::DEFAULT_REALITY_TOL;
use num_complex::Complex64;

fn complex(z: &Complex64) -> String {
    if z.im.abs() <= DEFAULT_REALITY_TOL * (1.0 + z.norm()) {
        format!("{:.4}", z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{:.4}{sign}{:.4}i", z.re, z.im.abs())
    }
}

fn list(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:.4}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render(r: &PointReport) -> String {
    let mut s = String::new();
    let d = &r.detail;
    let _ = writeln!(s, "family: {}", r.point.family());
    let params: Vec<String> = r
        .point
        .params()
        .iter()
        .map(|(k, v)| format!("{k} = {v:.4}"))
        .collect();
    let _ = writeln!(s, "parameters: {}", params.join(", "));
    if let Some(m) = &d.system.matrix {
        let _ = writeln!(s, "matrix:");
        for row in &m.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>9.4}")).collect();
            let _ = writeln!(s, "  [{} ]", cells.join(""));
        }
    }
    let _ = writeln!(s, "characteristic polynomial: {:.4}", d.system.charpoly);
    if d.system.poly_of_inverse {
        let _ = writeln!(
            s,
            "  (of the inverse matrix; the decisive eigenvalues are the reciprocals of its roots)"
        );
    }
    let _ = writeln!(s, "Fourier sequences:");
    for t in &r.tables {
        let _ = writeln!(
            s,
            "  x = {:>7.4}: ({})  variations {}",
            t.at,
            list(&t.values),
            t.variations
        );
    }
    let roots: Vec<String> = d.roots.roots.iter().map(complex).collect();
    let _ = writeln!(s, "oracle roots: {}", roots.join(", "));
    let _ = writeln!(
        s,
        "unit disk: {} inside, {} outside, {} on the circle (distance to circle {:.4})",
        d.profile.inside, d.profile.outside, d.profile.boundary, d.profile.circle_distance
    );
    let _ = writeln!(s, "oracle verdict: {}", d.oracle.outcome);
    match &d.analytic {
        Analytic::Exact(v) => {
            let _ = writeln!(s, "analytic verdict: {} [{}]", v.outcome, v.evidence.condition);
        }
        Analytic::OneSided(c) => {
            let _ = writeln!(
                s,
                "analytic (sufficient only): {:?} [{}]",
                c.certainty, c.evidence.condition
            );
        }
        Analytic::Necessary(b) => {
            let _ = writeln!(
                s,
                "analytic (necessary only): {:?} [{}]",
                b.verdict.certainty, b.verdict.evidence.condition
            );
            let _ = writeln!(
                s,
                "  P(1) = {:.4}, v0 = {}, v1 = {}, reference Taylor-type expression - 1 = {:.4}",
                b.p_at_one, b.v0, b.v1, b.reference_condition
            );
        }
    }
    let constraints = &d.analytic.evidence().constraints;
    if !constraints.is_empty() {
        let _ = writeln!(s, "conditions:");
        for c in constraints {
            let _ = writeln!(s, "  {c}");
        }
    }
    let _ = writeln!(s, "agreement: {}", d.status);
    let _ = writeln!(s, "verdict: {} ({})", r.outcome, r.condition);
    s
}
