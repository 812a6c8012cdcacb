//! String-keyed access to the model families, shared by the command line
//! tool and the Python bindings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::determinacy::{cross_validate, Agreement, AgreementReport, Analytic, Outcome};
use crate::error::{Error, Result};
use crate::models::{
    blp_system, bm_forward_system, bm_inertial_system, bm_noninertial_system,
    gabaix_cubic_system, gabaix_matrix_system, gali_system, BLPParams, BMForwardParams,
    BMInertialParams, BMNonInertialParams, GabaixCubic, GaliParams, Matrix3, ModelSystem,
};
use crate::poly::{fourier_signs_exact, fourier_table};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gali,
    BmNonInertial,
    BmInertial,
    BmForward,
    GabaixCubic,
    GabaixMatrix,
    Blp,
}

const MATRIX_PARAMS: [&str; 9] = [
    "m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33",
];

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Gali,
        Family::BmNonInertial,
        Family::BmInertial,
        Family::BmForward,
        Family::GabaixCubic,
        Family::GabaixMatrix,
        Family::Blp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gali => "gali",
            Family::BmNonInertial => "bm-noninertial",
            Family::BmInertial => "bm-inertial",
            Family::BmForward => "bm-forward",
            Family::GabaixCubic => "gabaix-cubic",
            Family::GabaixMatrix => "gabaix-matrix",
            Family::Blp => "blp",
        }
    }

    /// Parameter names in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Gali => &["beta", "sigma", "eta", "k"],
            Family::BmNonInertial => &["k", "sigma", "beta", "phi_x", "phi_pi"],
            Family::BmInertial | Family::BmForward => {
                &["k", "sigma", "beta", "phi_x", "phi_pi", "phi_r"]
            }
            Family::GabaixCubic => &["b", "c", "d"],
            Family::GabaixMatrix => &MATRIX_PARAMS,
            Family::Blp => &[
                "beta", "eta", "gamma", "rho_r", "k", "varphi", "phi_y", "phi_pi",
            ],
        }
    }

    /// Whether the family has a necessary-and-sufficient analytic classifier.
    pub fn has_exact_classifier(self) -> bool {
        !matches!(self, Family::BmForward | Family::Blp)
    }

    /// Points where the relevant theorem reads Fourier sequences. `b` is the
    /// trace for the three-dimensional families.
    fn decision_points(self, b: f64) -> Vec<f64> {
        match self {
            Family::Gali => vec![1.0, b],
            Family::BmNonInertial | Family::BmInertial | Family::BmForward => {
                vec![-1.0, 0.0, 1.0]
            }
            Family::GabaixCubic | Family::GabaixMatrix | Family::Blp => vec![0.0, 1.0],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Parameter name to value; names use underscores (`phi_pi`).
pub type ParamSet = BTreeMap<String, f64>;

/// Normalises a user-facing parameter name (`phi-pi`, `PHI_PI`) to its
/// canonical form.
pub fn canonical_param(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

/// A validated parameter point of one family.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelPoint {
    Gali(GaliParams),
    BmNonInertial(BMNonInertialParams),
    BmInertial(BMInertialParams),
    BmForward(BMForwardParams),
    GabaixCubic(GabaixCubic),
    GabaixMatrix(Matrix3),
    Blp(BLPParams),
}

impl ModelPoint {
    /// Builds and validates a point. Every parameter of the family must be
    /// present exactly once and no others.
    pub fn from_params(family: Family, params: &ParamSet) -> Result<Self> {
        let names = family.param_names();
        for key in params.keys() {
            if !names.contains(&key.as_str()) {
                return Err(Error::invalid(
                    key,
                    format!("not a parameter of {family} (expected {})", names.join(", ")),
                ));
            }
        }
        let get = |name: &str| -> Result<f64> {
            let v = *params
                .get(name)
                .ok_or_else(|| Error::invalid(name, "missing"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::invalid(name, format!("must be finite, got {v}")))
            }
        };
        let point = match family {
            Family::Gali => ModelPoint::Gali(GaliParams {
                beta: get("beta")?,
                sigma: get("sigma")?,
                eta: get("eta")?,
                k: get("k")?,
            }),
            Family::BmNonInertial => ModelPoint::BmNonInertial(BMNonInertialParams {
                k: get("k")?,
                sigma: get("sigma")?,
                beta: get("beta")?,
                phi_x: get("phi_x")?,
                phi_pi: get("phi_pi")?,
            }),
            Family::BmInertial | Family::BmForward => {
                let p = BMInertialParams {
                    k: get("k")?,
                    sigma: get("sigma")?,
                    beta: get("beta")?,
                    phi_x: get("phi_x")?,
                    phi_pi: get("phi_pi")?,
                    phi_r: get("phi_r")?,
                };
                if family == Family::BmInertial {
                    ModelPoint::BmInertial(p)
                } else {
                    ModelPoint::BmForward(p)
                }
            }
            Family::GabaixCubic => ModelPoint::GabaixCubic(GabaixCubic {
                b: get("b")?,
                c: get("c")?,
                d: get("d")?,
            }),
            Family::GabaixMatrix => {
                let v = MATRIX_PARAMS
                    .iter()
                    .map(|n| get(n))
                    .collect::<Result<Vec<_>>>()?;
                ModelPoint::GabaixMatrix(Matrix3::from_slice(&v)?)
            }
            Family::Blp => ModelPoint::Blp(BLPParams {
                beta: get("beta")?,
                eta: get("eta")?,
                gamma: get("gamma")?,
                rho_r: get("rho_r")?,
                k: get("k")?,
                varphi: get("varphi")?,
                phi_y: get("phi_y")?,
                phi_pi: get("phi_pi")?,
            }),
        };
        point.validate()?;
        Ok(point)
    }

    pub fn family(&self) -> Family {
        match self {
            ModelPoint::Gali(_) => Family::Gali,
            ModelPoint::BmNonInertial(_) => Family::BmNonInertial,
            ModelPoint::BmInertial(_) => Family::BmInertial,
            ModelPoint::BmForward(_) => Family::BmForward,
            ModelPoint::GabaixCubic(_) => Family::GabaixCubic,
            ModelPoint::GabaixMatrix(_) => Family::GabaixMatrix,
            ModelPoint::Blp(_) => Family::Blp,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelPoint::Gali(p) => p.validate(),
            ModelPoint::BmNonInertial(p) => p.validate(),
            ModelPoint::BmInertial(p) | ModelPoint::BmForward(p) => p.validate(),
            ModelPoint::GabaixCubic(g) => g.validate(),
            ModelPoint::GabaixMatrix(_) => Ok(()),
            ModelPoint::Blp(p) => p.validate(),
        }
    }

    /// The parameters as a name-value map.
    pub fn params(&self) -> ParamSet {
        let values: Vec<f64> = match self {
            ModelPoint::Gali(p) => vec![p.beta, p.sigma, p.eta, p.k],
            ModelPoint::BmNonInertial(p) => vec![p.k, p.sigma, p.beta, p.phi_x, p.phi_pi],
            ModelPoint::BmInertial(p) | ModelPoint::BmForward(p) => {
                vec![p.k, p.sigma, p.beta, p.phi_x, p.phi_pi, p.phi_r]
            }
            ModelPoint::GabaixCubic(g) => vec![g.b, g.c, g.d],
            ModelPoint::GabaixMatrix(m) => m.rows.iter().flatten().copied().collect(),
            ModelPoint::Blp(p) => vec![
                p.beta, p.eta, p.gamma, p.rho_r, p.k, p.varphi, p.phi_y, p.phi_pi,
            ],
        };
        self.family()
            .param_names()
            .iter()
            .map(|n| n.to_string())
            .zip(values)
            .collect()
    }

    pub fn system(&self, tol: &Tolerances) -> Result<ModelSystem> {
        match self {
            ModelPoint::Gali(p) => gali_system(p),
            ModelPoint::BmNonInertial(p) => bm_noninertial_system(p),
            ModelPoint::BmInertial(p) => bm_inertial_system(p),
            ModelPoint::BmForward(p) => bm_forward_system(p, tol.zero_tol),
            ModelPoint::GabaixCubic(g) => gabaix_cubic_system(g),
            ModelPoint::GabaixMatrix(m) => gabaix_matrix_system(m),
            ModelPoint::Blp(p) => blp_system(p),
        }
    }
}

/// A Fourier sequence of the characteristic polynomial at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub at: f64,
    pub values: Vec<f64>,
    pub signs: Vec<i8>,
    pub variations: usize,
}

/// Everything the single-point report shows.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub point: ModelPoint,
    pub tables: Vec<TableRow>,
    pub detail: AgreementReport,
    /// The analytic verdict where the family has an exact classifier, the
    /// oracle's otherwise.
    pub outcome: Outcome,
    pub condition: String,
}

impl PointReport {
    pub fn agreement(&self) -> Agreement {
        self.detail.status
    }
}

fn tables(system: &ModelSystem, family: Family, tol: &Tolerances) -> Result<Vec<TableRow>> {
    let p = &system.charpoly;
    let b = if p.degree() == 3 { -p.coeffs()[2] / p.leading() } else { 1.0 };
    family
        .decision_points(b)
        .into_iter()
        .map(|x| {
            let t = fourier_table(p, x, tol.zero_tol);
            let (signs, variations) = if tol.exact {
                let e = fourier_signs_exact(p, x)?;
                (e.signs(), e.variations())
            } else {
                (t.entries.signs(), t.variations())
            };
            Ok(TableRow {
                at: x,
                values: t.values().to_vec(),
                signs,
                variations,
            })
        })
        .collect()
}

/// Runs the full single-point analysis.
pub fn analyze_point(point: &ModelPoint, tol: &Tolerances) -> Result<PointReport> {
    let detail = cross_validate(point, tol)?;
    let tables = tables(&detail.system, point.family(), tol)?;
    let (outcome, condition) = match &detail.analytic {
        Analytic::Exact(v) => (v.outcome, v.evidence.condition.clone()),
        _ => (
            detail.oracle.outcome,
            format!(
                "oracle: {} inside, {} outside, {} on the circle",
                detail.profile.inside, detail.profile.outside, detail.profile.boundary
            ),
        ),
    };
    Ok(PointReport {
        point: point.clone(),
        tables,
        detail,
        outcome,
        condition,
    })
}

/// Parses the family and the parameters and runs [`analyze_point`].
pub fn analyze(family: &str, params: &ParamSet, tol: &Tolerances) -> Result<PointReport> {
    let family: Family = family.parse()?;
    let params: ParamSet = params
        .iter()
        .map(|(k, v)| (canonical_param(k), *v))
        .collect();
    analyze_point(&ModelPoint::from_params(family, &params)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, f64)]) -> ParamSet {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("galí".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn params_round_trip() {
        let ps = params(&[("beta", 0.99), ("sigma", 0.5), ("eta", 1.2), ("k", 0.3)]);
        let p = ModelPoint::from_params(Family::Gali, &ps).unwrap();
        assert_eq!(p.params(), ps);
    }

    #[test]
    fn missing_and_unknown_parameters() {
        let ps = params(&[("beta", 0.99), ("sigma", 0.5), ("eta", 1.2)]);
        assert!(matches!(
            ModelPoint::from_params(Family::Gali, &ps),
            Err(Error::InvalidParams { ref name, .. }) if name == "k"
        ));
        let ps = params(&[("beta", 0.99), ("sigma", 0.5), ("eta", 1.2), ("k", 0.3), ("x", 1.0)]);
        assert!(matches!(
            ModelPoint::from_params(Family::Gali, &ps),
            Err(Error::InvalidParams { ref name, .. }) if name == "x"
        ));
    }

    #[test]
    fn invalid_beta_is_rejected() {
        let ps = params(&[("beta", 1.2), ("sigma", 0.5), ("eta", 1.2), ("k", 0.3)]);
        assert!(matches!(
            analyze("gali", &ps, &Tolerances::default()),
            Err(Error::InvalidParams { ref name, .. }) if name == "beta"
        ));
    }

    #[test]
    fn gali_report() {
        let ps = params(&[("beta", 0.99), ("sigma", 0.5), ("eta", 1.2), ("k", 0.3)]);
        let r = analyze("gali", &ps, &Tolerances::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Determinate);
        assert_eq!(r.agreement(), Agreement::Agree);
        assert_eq!(r.tables.len(), 2);
        assert_eq!(r.tables[0].at, 1.0);
        assert!((r.tables[1].at - 2.7775).abs() < 5e-5);
        // one root in (1, b)
        assert_eq!(r.tables[0].variations - r.tables[1].variations, 1);
    }

    #[test]
    fn dashed_names_are_accepted() {
        let ps = params(&[
            ("phi-x", 2.4),
            ("phi-pi", 3.2),
            ("sigma", 1.0),
            ("beta", 0.99),
            ("k", 0.3),
        ]);
        let r = analyze("bm-noninertial", &ps, &Tolerances::default()).unwrap();
        assert_ne!(r.outcome, Outcome::Determinate);
    }

    #[test]
    fn forward_uses_oracle_outcome() {
        let ps = params(&[
            ("k", 0.3),
            ("sigma", 1.0),
            ("beta", 0.99),
            ("phi_x", 4.3),
            ("phi_pi", 1.5),
            ("phi_r", 0.5),
        ]);
        let r = analyze("bm-forward", &ps, &Tolerances::default()).unwrap();
        assert_eq!(r.outcome, r.detail.oracle.outcome);
        assert!(r.condition.starts_with("oracle"));
    }
}
