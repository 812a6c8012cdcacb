//! Numerical thresholds shared by every layer.

pub const DEFAULT_ZERO_TOL: f64 = 1e-9;
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-7;
pub const DEFAULT_REALITY_TOL: f64 = 1e-8;

/// Thresholds for sign and location decisions.
///
/// `zero_tol` is an absolute threshold on evaluated quantities (Fourier
/// entries, inequality expressions); `boundary_tol` is the half-width of the
/// band around the unit circle; `reality_tol` bounds the imaginary part of a
/// root listed as real. With `exact` set, sign sequences are evaluated in
/// rational arithmetic and only an exact zero counts as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub zero_tol: f64,
    pub boundary_tol: f64,
    pub reality_tol: f64,
    pub exact: bool,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_tol: DEFAULT_ZERO_TOL,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
            reality_tol: DEFAULT_REALITY_TOL,
            exact: false,
        }
    }
}

impl Tolerances {
    pub fn with_exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn with_boundary_tol(mut self, boundary_tol: f64) -> Self {
        self.boundary_tol = boundary_tol;
        self
    }

    pub fn with_zero_tol(mut self, zero_tol: f64) -> Self {
        self.zero_tol = zero_tol;
        self
    }
}
