//! Parameter records, transition matrices and characteristic polynomials of
//! the model families.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::oracle::{all_roots, RootProfile};
use crate::poly::Poly;
use crate::tolerance::Tolerances;

/// A real 3×3 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3 {
    pub rows: [[f64; 3]; 3],
}

impl Matrix3 {
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("matrix", "entries must be finite"));
        }
        Ok(Self { rows })
    }

    pub fn identity() -> Self {
        Self {
            rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Row-major entries `m11, m12, ..., m33`.
    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() != 9 {
            return Err(Error::invalid(
                "matrix",
                format!("expected 9 entries, got {}", v.len()),
            ));
        }
        Self::new([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn scale(&self, s: f64) -> Matrix3 {
        let mut rows = self.rows;
        rows.iter_mut().flatten().for_each(|v| *v *= s);
        Matrix3 { rows }
    }

    pub fn trace(&self) -> f64 {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    fn minor(&self, i: usize, j: usize) -> f64 {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        self.rows[r[0]][c[0]] * self.rows[r[1]][c[1]]
            - self.rows[r[0]][c[1]] * self.rows[r[1]][c[0]]
    }

    pub fn det(&self) -> f64 {
        (0..3)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * self.rows[0][j] * self.minor(0, j)
            })
            .sum()
    }

    /// Sum of the principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> f64 {
        self.minor(0, 0) + self.minor(1, 1) + self.minor(2, 2)
    }

    /// `det(xI - M) = x^3 - tr(M) x^2 + E2(M) x - det(M)`.
    pub fn char_poly(&self) -> Poly {
        Poly::from_descending(&[
            1.0,
            -self.trace(),
            self.principal_minor_sum(),
            -self.det(),
        ])
    }

    /// Inverse by the adjugate; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Matrix3> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                *v = sign * self.minor(j, i) / det;
            }
        }
        Some(Matrix3 { rows })
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        Matrix3 { rows }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be > 0, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be >= 0, got {v}")))
    }
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must lie in (0, 1), got {v}")))
    }
}

fn half_open_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must lie in [0, 1), got {v}")))
    }
}

fn closed_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must lie in [0, 1], got {v}")))
    }
}

/// Money-in-utility model with cash-when-I'm-done timing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaliParams {
    pub k: f64,
    pub sigma: f64,
    pub eta: f64,
    pub beta: f64,
}

impl GaliParams {
    pub fn new(beta: f64, sigma: f64, eta: f64, k: f64) -> Result<Self> {
        let p = Self { k, sigma, eta, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        positive("k", self.k)?;
        positive("sigma", self.sigma)?;
        positive("eta", self.eta)?;
        open_unit("beta", self.beta)
    }

    /// `(b, c, d)` of `x^3 - b x^2 + c x - d`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let Self { k, sigma, eta, beta } = *self;
        let s = 1.0 + sigma * eta;
        let b = (sigma * eta + k * (1.0 + eta)) / s + 1.0 + beta;
        let c = (1.0 + beta) * sigma * eta / s + k * eta / s + beta;
        let d = beta * sigma * eta / s;
        (b, c, d)
    }

    pub fn matrix(&self) -> Matrix3 {
        let Self { k, sigma, eta, beta } = *self;
        let s = 1.0 + sigma * eta;
        let se = sigma * eta / s;
        Matrix3 {
            rows: [
                [se, eta / s, 1.0 / s],
                [k * se, k * eta / s + beta, k / s],
                [k * se, k * eta / s + beta, k / s + 1.0],
            ],
        }
    }
}

/// Bullard–Mitra model with a contemporaneous (non-inertial) rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BMNonInertialParams {
    pub k: f64,
    pub sigma: f64,
    pub beta: f64,
    pub phi_x: f64,
    pub phi_pi: f64,
}

impl BMNonInertialParams {
    pub fn validate(&self) -> Result<()> {
        positive("k", self.k)?;
        positive("sigma", self.sigma)?;
        open_unit("beta", self.beta)?;
        nonnegative("phi_x", self.phi_x)?;
        nonnegative("phi_pi", self.phi_pi)?;
        if self.phi_x + self.phi_pi <= 0.0 {
            return Err(Error::invalid(
                "phi_x",
                "phi_x or phi_pi must be strictly positive",
            ));
        }
        Ok(())
    }

    /// `(b, c, d)` of the characteristic polynomial `x^3 - b x^2 + c x + d`
    /// of `B^-1`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let Self {
            k,
            sigma,
            beta,
            phi_x,
            phi_pi,
        } = *self;
        let b = 1.0 + 1.0 / beta + k / (beta * sigma);
        let c = 1.0 / beta - phi_x / sigma;
        let d = (phi_x + k * phi_pi) / (beta * sigma);
        (b, c, d)
    }

    /// The matrix `B` whose stability decides determinacy.
    pub fn matrix(&self) -> Matrix3 {
        let Self {
            k,
            sigma,
            beta,
            phi_x,
            phi_pi,
        } = *self;
        let g = phi_x + k * phi_pi;
        Matrix3 {
            rows: [
                [0.0, -beta * phi_pi, 1.0],
                [0.0, beta * phi_x, k],
                [sigma * g, phi_x + (k + beta * sigma) * phi_pi, -sigma],
            ],
        }
        .scale(1.0 / g)
    }

    pub fn inverse_matrix(&self) -> Matrix3 {
        let Self {
            k,
            sigma,
            beta,
            phi_x,
            phi_pi,
        } = *self;
        Matrix3 {
            rows: [
                [1.0 + k / (beta * sigma), -1.0 / (beta * sigma), 1.0 / sigma],
                [-k / beta, 1.0 / beta, 0.0],
                [phi_x, phi_pi, 0.0],
            ],
        }
    }
}

/// Bullard–Mitra model with an inertial rule on lagged data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BMInertialParams {
    pub k: f64,
    pub sigma: f64,
    pub beta: f64,
    pub phi_x: f64,
    pub phi_pi: f64,
    pub phi_r: f64,
}

impl BMInertialParams {
    pub fn validate(&self) -> Result<()> {
        positive("k", self.k)?;
        positive("sigma", self.sigma)?;
        open_unit("beta", self.beta)?;
        nonnegative("phi_x", self.phi_x)?;
        nonnegative("phi_pi", self.phi_pi)?;
        nonnegative("phi_r", self.phi_r)?;
        if self.phi_x + self.phi_pi + self.phi_r <= 0.0 {
            return Err(Error::invalid(
                "phi_x",
                "one of phi_x, phi_pi, phi_r must be strictly positive",
            ));
        }
        Ok(())
    }

    /// `(b, c, d)` of `x^3 - b x^2 + c x + d`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let Self {
            k,
            sigma,
            beta,
            phi_x,
            phi_pi,
            phi_r,
        } = *self;
        let head = 1.0 + 1.0 / beta + k * sigma / beta;
        let b = head + phi_r;
        let c = 1.0 / beta + head * phi_r - sigma * phi_x;
        let d = sigma * (phi_x + k * phi_pi - phi_r / sigma) / beta;
        (b, c, d)
    }

    pub fn matrix(&self) -> Matrix3 {
        let Self {
            k,
            sigma,
            beta,
            phi_x,
            phi_pi,
            phi_r,
        } = *self;
        Matrix3 {
            rows: [
                [1.0 + k * sigma / beta, -sigma / beta, sigma],
                [-k / beta, 1.0 / beta, 0.0],
                [phi_x, phi_pi, phi_r],
            ],
        }
    }
}

/// Bullard–Mitra model with a rule reacting to expected future values.
/// Shares the parameter space of the inertial rule.
pub type BMForwardParams = BMInertialParams;

/// Forward-rule matrix; fails when `1 - sigma * phi_x` is within `zero_tol`
/// of zero.
pub fn forward_matrix(p: &BMForwardParams, zero_tol: f64) -> Result<Matrix3> {
    p.validate()?;
    let BMInertialParams {
        k,
        sigma,
        beta,
        phi_x,
        phi_pi,
        phi_r,
    } = *p;
    let q = 1.0 - phi_x * sigma;
    if q.abs() <= zero_tol {
        return Err(Error::SingularPrefactor);
    }
    Ok(Matrix3 {
        rows: [
            [
                1.0 - k * sigma * (phi_pi - 1.0) / beta,
                sigma * (phi_pi - 1.0) / beta,
                sigma * phi_r,
            ],
            [-k * q / beta, q / beta, 0.0],
            [
                phi_x * (1.0 + k * sigma / beta) - k * phi_pi / beta,
                (phi_pi - phi_x * sigma) / beta,
                phi_r,
            ],
        ],
    }
    .scale(1.0 / q))
}

/// Coefficients of `x^3 - b x^2 + c x - d` with `b, c, d > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabaixCubic {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GabaixCubic {
    pub fn new(b: f64, c: f64, d: f64) -> Result<Self> {
        let g = Self { b, c, d };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        positive("b", self.b)?;
        positive("c", self.c)?;
        positive("d", self.d)
    }

    /// Reads `(b, c, d)` off the characteristic polynomial of a matrix.
    pub fn from_matrix(m: &Matrix3) -> Self {
        Self {
            b: m.trace(),
            c: m.principal_minor_sum(),
            d: m.det(),
        }
    }

    pub fn poly(&self) -> Poly {
        Poly::from_descending(&[1.0, -self.b, self.c, -self.d])
    }

    pub fn p_at_one(&self) -> f64 {
        1.0 - self.b + self.c - self.d
    }
}

/// Structural inputs of the behavioural model, used only by the region
/// inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabaixStructural {
    pub k: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub alpha_f: f64,
    pub beta: f64,
    pub beta_f: f64,
    pub m: f64,
    pub eta: f64,
    pub rho: f64,
    pub chi: f64,
    pub phi_x: f64,
    pub phi_pi: f64,
}

impl GabaixStructural {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("k", self.k),
            ("sigma", self.sigma),
            ("alpha", self.alpha),
            ("alpha_f", self.alpha_f),
            ("beta", self.beta),
            ("beta_f", self.beta_f),
            ("m", self.m),
            ("eta", self.eta),
            ("rho", self.rho),
            ("chi", self.chi),
            ("phi_x", self.phi_x),
            ("phi_pi", self.phi_pi),
        ];
        if let Some((name, v)) = all.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::invalid(name, format!("must be finite, got {v}")));
        }
        if self.m == 0.0 {
            return Err(Error::invalid("m", "must be nonzero"));
        }
        if self.beta_f == 0.0 {
            return Err(Error::invalid("beta_f", "must be nonzero"));
        }
        Ok(())
    }
}

/// Bhattarai–Lee–Park model with a degree-five characteristic polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BLPParams {
    pub beta: f64,
    pub eta: f64,
    pub gamma: f64,
    pub rho_r: f64,
    pub k: f64,
    pub varphi: f64,
    pub phi_y: f64,
    pub phi_pi: f64,
}

impl BLPParams {
    pub fn validate(&self) -> Result<()> {
        open_unit("beta", self.beta)?;
        half_open_unit("eta", self.eta)?;
        closed_unit("gamma", self.gamma)?;
        half_open_unit("rho_r", self.rho_r)?;
        positive("k", self.k)?;
        positive("varphi", self.varphi)?;
        positive("phi_y", self.phi_y)?;
        positive("phi_pi", self.phi_pi)
    }

    /// `[a0, a1, a2, a3, a4, a5]`.
    pub fn coefficients(&self) -> [f64; 6] {
        let Self {
            beta,
            eta,
            gamma,
            rho_r: rho,
            k,
            varphi,
            phi_y,
            phi_pi,
        } = *self;
        let s1 = eta + gamma + rho;
        let s2 = eta * gamma + eta * rho + gamma * rho;
        let s3 = eta * gamma * rho;
        let policy = (phi_pi + rho / (1.0 - rho)) * (varphi + 1.0 / (1.0 - eta));
        let a5 = beta;
        let a4 = beta
            + 1.0
            + beta * s1
            + (1.0 - eta) * k * (varphi + 1.0 / (1.0 - eta) + (1.0 - rho) * phi_y / k * beta);
        let a3 = 1.0
            + (beta + 1.0) * s1
            + beta * s2
            + (1.0 - eta)
                * (1.0 - rho)
                * k
                * (policy
                    + (1.0 + beta * gamma) * phi_y / k
                    + 1.0 / (1.0 - rho) * (eta / (1.0 - eta)));
        let a2 = s1
            + (beta + 1.0) * s2
            + beta * s3
            + (1.0 - eta) * (1.0 - rho) * k * (policy + phi_y * gamma / k);
        let a1 = eta * gamma + rho * (eta + gamma + eta * gamma + beta * eta * gamma);
        let a0 = s3;
        [a0, a1, a2, a3, a4, a5]
    }

    /// The Taylor-type expression whose excess over one is reported as the
    /// first necessary condition.
    pub fn taylor_expression(&self) -> f64 {
        self.phi_pi
            + (1.0 - self.gamma) * (1.0 - self.beta) / (self.k * (self.varphi + 1.0)) * self.phi_y
    }
}

/// `a5 x^5 - a4 x^4 + a3 x^3 - a2 x^2 + a1 x - a0`.
pub fn blp_coefficients(p: &BLPParams) -> Result<Poly> {
    p.validate()?;
    let a = p.coefficients();
    Ok(Poly::from_descending(&[a[5], -a[4], a[3], -a[2], a[1], -a[0]]))
}

/// A family instance reduced to what the root analysis needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSystem {
    pub family: Family,
    /// The matrix whose eigenvalues decide determinacy, when the family has a
    /// 3×3 representation.
    pub matrix: Option<Matrix3>,
    pub charpoly: Poly,
    /// Explosive roots the decisive matrix must have.
    pub required_outside: usize,
    /// `charpoly` belongs to the inverse of `matrix`; its roots are the
    /// reciprocals of the decisive eigenvalues.
    pub poly_of_inverse: bool,
}

impl ModelSystem {
    pub fn degree(&self) -> usize {
        self.charpoly.degree()
    }

    pub fn required_inside(&self) -> usize {
        self.degree() - self.required_outside
    }

    /// Unit-disk profile of the decisive eigenvalues (reciprocals of the
    /// polynomial's roots when `poly_of_inverse`).
    pub fn profile(&self, tol: &Tolerances) -> Result<RootProfile> {
        let rs = all_roots(&self.charpoly)?;
        rs.require_converged()?;
        let decisive = if self.poly_of_inverse {
            rs.reciprocals()
        } else {
            rs
        };
        Ok(RootProfile::from_roots(&decisive.roots, tol))
    }
}

pub fn gali_system(p: &GaliParams) -> Result<ModelSystem> {
    p.validate()?;
    let (b, c, d) = p.coefficients();
    Ok(ModelSystem {
        family: Family::Gali,
        matrix: Some(p.matrix()),
        charpoly: Poly::from_descending(&[1.0, -b, c, -d]),
        required_outside: 1,
        poly_of_inverse: false,
    })
}

pub fn bm_noninertial_system(p: &BMNonInertialParams) -> Result<ModelSystem> {
    p.validate()?;
    let (b, c, d) = p.coefficients();
    Ok(ModelSystem {
        family: Family::BmNonInertial,
        matrix: Some(p.matrix()),
        charpoly: Poly::from_descending(&[1.0, -b, c, d]),
        required_outside: 1,
        poly_of_inverse: true,
    })
}

pub fn bm_inertial_system(p: &BMInertialParams) -> Result<ModelSystem> {
    p.validate()?;
    let (b, c, d) = p.coefficients();
    Ok(ModelSystem {
        family: Family::BmInertial,
        matrix: Some(p.matrix()),
        charpoly: Poly::from_descending(&[1.0, -b, c, d]),
        required_outside: 2,
        poly_of_inverse: false,
    })
}

pub fn bm_forward_system(p: &BMForwardParams, zero_tol: f64) -> Result<ModelSystem> {
    let m = forward_matrix(p, zero_tol)?;
    Ok(ModelSystem {
        family: Family::BmForward,
        matrix: Some(m),
        charpoly: m.char_poly(),
        required_outside: 2,
        poly_of_inverse: false,
    })
}

pub fn gabaix_cubic_system(g: &GabaixCubic) -> Result<ModelSystem> {
    g.validate()?;
    Ok(ModelSystem {
        family: Family::GabaixCubic,
        matrix: None,
        charpoly: g.poly(),
        required_outside: 2,
        poly_of_inverse: false,
    })
}

pub fn gabaix_matrix_system(m: &Matrix3) -> Result<ModelSystem> {
    let m = Matrix3::new(m.rows)?;
    Ok(ModelSystem {
        family: Family::GabaixMatrix,
        matrix: Some(m),
        charpoly: m.char_poly(),
        required_outside: 2,
        poly_of_inverse: false,
    })
}

pub fn blp_system(p: &BLPParams) -> Result<ModelSystem> {
    Ok(ModelSystem {
        family: Family::Blp,
        matrix: None,
        charpoly: blp_coefficients(p)?,
        required_outside: 2,
        poly_of_inverse: false,
    })
}
