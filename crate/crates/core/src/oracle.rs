//! Numeric ground truth: all complex roots, unit-disk profiles and bisection
//! isolation of real roots.
//!
//! Nothing here uses the analytic results of [`crate::determinacy`]; the
//! oracle is what those results are checked against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::Matrix3;
use crate::poly::{budan_fourier_bound, cauchy_bound, fourier_table, Poly};
use crate::tolerance::Tolerances;

pub const MAX_ITERATIONS: usize = 500;
pub const STEP_TOL: f64 = 1e-13;
pub const CLUSTER_WIDTH: f64 = 1e-12;

/// All complex roots of a polynomial together with their residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn require_converged(&self) -> Result<&Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NoConvergence {
                iterations: self.iterations,
            })
        }
    }

    /// The roots mapped through `z -> 1/z`. Residuals are not carried over.
    pub fn reciprocals(&self) -> RootSet {
        RootSet {
            roots: self.roots.iter().map(|z| z.inv()).collect(),
            residuals: vec![f64::NAN; self.roots.len()],
            converged: self.converged,
            iterations: self.iterations,
        }
    }

    /// Roots whose imaginary part is at most `reality_tol`, as reals, sorted.
    pub fn real_roots(&self, reality_tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots
            .iter()
            .filter(|z| z.im.abs() <= reality_tol)
            .map(|z| z.re)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Number of (numerically) real roots in the open interval `(a, b)`.
    pub fn count_real_in(&self, a: f64, b: f64, reality_tol: f64) -> usize {
        self.real_roots(reality_tol)
            .into_iter()
            .filter(|&x| a < x && x < b)
            .count()
    }
}

/// Where a root sits relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Outside,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub location: Location,
}

/// Counts of roots inside, outside and on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct RootProfile {
    pub inside: usize,
    pub outside: usize,
    pub boundary: usize,
    pub real_roots: Vec<RealRoot>,
    /// Smallest `| |z| - 1 |` over all roots.
    pub circle_distance: f64,
}

impl RootProfile {
    pub fn from_roots(roots: &[Complex64], tol: &Tolerances) -> Self {
        let mut profile = RootProfile {
            inside: 0,
            outside: 0,
            boundary: 0,
            real_roots: Vec::new(),
            circle_distance: f64::INFINITY,
        };
        for z in roots {
            let gap = z.norm() - 1.0;
            profile.circle_distance = profile.circle_distance.min(gap.abs());
            let location = if gap.abs() <= tol.boundary_tol {
                profile.boundary += 1;
                Location::Boundary
            } else if gap < 0.0 {
                profile.inside += 1;
                Location::Inside
            } else {
                profile.outside += 1;
                Location::Outside
            };
            if z.im.abs() <= tol.reality_tol {
                profile.real_roots.push(RealRoot {
                    value: z.re,
                    location,
                });
            }
        }
        profile
            .real_roots
            .sort_by(|a, b| a.value.total_cmp(&b.value));
        profile
    }

    pub fn total(&self) -> usize {
        self.inside + self.outside + self.boundary
    }

    /// Real roots in the open interval `(a, b)`.
    pub fn real_in(&self, a: f64, b: f64) -> Vec<f64> {
        self.real_roots
            .iter()
            .map(|r| r.value)
            .filter(|&x| a < x && x < b)
            .collect()
    }
}

/// Classifies every root of a converged [`RootSet`] against the unit circle.
pub fn unit_disk_profile(rs: &RootSet, tol: &Tolerances) -> Result<RootProfile> {
    rs.require_converged()?;
    Ok(RootProfile::from_roots(&rs.roots, tol))
}

/// All complex roots of `p` by simultaneous Aberth–Ehrlich iteration.
///
/// Starts from points spread on the circle of radius `cauchy_bound / 2` and
/// updates in Gauss–Seidel order. Stops when every correction is below
/// `1e-13 * max(1, |z|)`, or when every residual is within the rounding error
/// of Horner evaluation and every correction is below `1e-5 * (1 + |z|)`
/// (the plain step test stalls at multiple roots). After 500 sweeps the
/// current iterates are returned with `converged == false`.
pub fn all_roots(p: &Poly) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::DegreeTooLow {
            required: 1,
            actual: 0,
        });
    }
    let zeros = p.coeffs().iter().take_while(|&&c| c == 0.0).count();
    let reduced = Poly::new(p.coeffs()[zeros..].to_vec()).monic();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let (found, converged, iterations) = aberth(&reduced);
    roots.extend(found);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let residuals = roots.iter().map(|&z| p.eval_complex(z).norm()).collect();
    Ok(RootSet {
        roots,
        residuals,
        converged,
        iterations,
    })
}

fn aberth(p: &Poly) -> (Vec<Complex64>, bool, usize) {
    let n = p.degree();
    match n {
        0 => return (Vec::new(), true, 0),
        1 => {
            let c = p.coeffs();
            return (vec![Complex64::new(-c[0] / c[1], 0.0)], true, 0);
        }
        _ => {}
    }
    let dp = p.derivative();
    let radius = cauchy_bound(p) / 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.25;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for iteration in 1..=MAX_ITERATIONS {
        let mut max_rel_step = 0.0_f64;
        let mut max_loose_step = 0.0_f64;
        let mut all_in_noise = true;
        for i in 0..n {
            let (pz, err) = p.eval_complex_with_error(z[i]);
            if pz.norm() > err {
                all_in_noise = false;
            }
            if pz == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dpz = dp.eval_complex(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let mut denom = dpz - pz * repulsion;
            if !denom.is_finite() || denom.norm() == 0.0 {
                denom = Complex64::new(1.0, 1.0) * (1.0 + pz.norm());
            }
            let step = pz / denom;
            let scale = 1.0 + z[i].norm();
            max_rel_step = max_rel_step.max(step.norm() / z[i].norm().max(1.0));
            max_loose_step = max_loose_step.max(step.norm() / scale);
            z[i] -= step;
        }
        if max_rel_step < STEP_TOL || (all_in_noise && max_loose_step < 1e-5) {
            return (z, true, iteration);
        }
    }
    (z, false, MAX_ITERATIONS)
}

/// Sorted real roots of `p` in `(a, b)`, isolated by bisection steered by the
/// Budan–Fourier bound and refined to width `1e-12`.
pub fn real_roots_in(p: &Poly, a: f64, b: f64, zero_tol: f64) -> Result<Vec<f64>> {
    // validates the interval and both endpoints
    budan_fourier_bound(p, a, b, zero_tol)?;
    let mut roots = Vec::new();
    let mut stack = vec![(a, b)];
    while let Some((lo, hi)) = stack.pop() {
        let bound = budan_fourier_bound(p, lo, hi, zero_tol)?.max_roots;
        match bound {
            0 => {}
            1 => roots.push(refine(p, lo, hi)),
            _ if taylor_excludes(p, lo, hi) => {}
            _ => {
                if hi - lo < CLUSTER_WIDTH {
                    return Err(Error::UnresolvedCluster { a: lo, b: hi, bound });
                }
                let mid = split_point(p, lo, hi, zero_tol).ok_or(Error::UnresolvedCluster {
                    a: lo,
                    b: hi,
                    bound,
                })?;
                stack.push((mid, hi));
                stack.push((lo, mid));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Whether the disk around the midpoint of `[lo, hi]` reaching both ends is
/// free of roots: `|p(m)| > sum |p^(i)(m)| / i! r^i`. Complex pairs close to
/// the axis never leave the Budan–Fourier bound, but fail this test.
fn taylor_excludes(p: &Poly, lo: f64, hi: f64) -> bool {
    let m = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    let d = fourier_table(p, m, 0.0);
    let d = d.values();
    let mut tail = 0.0;
    let mut factorial = 1.0;
    for (i, v) in d.iter().enumerate().skip(1) {
        factorial *= i as f64;
        tail += v.abs() / factorial * r.powi(i as i32);
    }
    let n = p.coeffs().len() as f64;
    let rounding = 4.0 * n * f64::EPSILON
        * p.coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * m.abs() + c.abs());
    d[0].abs() - rounding > tail
}

fn split_point(p: &Poly, lo: f64, hi: f64, zero_tol: f64) -> Option<f64> {
    [0.5, 0.381_966, 0.618_034, 0.25, 0.75, 0.1, 0.9]
        .iter()
        .map(|f| lo + f * (hi - lo))
        .find(|&m| m > lo && m < hi && p.eval(m).abs() > zero_tol)
}

fn refine(p: &Poly, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = p.eval(lo);
    while hi - lo > CLUSTER_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = p.eval(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues of a 3×3 matrix as the roots of its characteristic polynomial.
pub fn eigenvalues_3x3(m: &Matrix3) -> Result<RootSet> {
    let rs = all_roots(&m.char_poly())?;
    rs.require_converged()?;
    Ok(rs)
}

/// Monic coefficients (ascending) of `prod (x - r_i)`.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Largest distance between paired elements under the best one-to-one
/// pairing of two equally long root lists.
///
/// # Panics
/// If the lengths differ or exceed eight.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "root lists must have equal length");
    assert!(a.len() <= 8, "matching is exhaustive; keep lists short");
    fn go(a: &[Complex64], b: &[Complex64], used: &mut Vec<bool>, i: usize, worst: f64) -> f64 {
        if i == a.len() {
            return worst;
        }
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            let w = worst.max((a[i] - b[j]).norm());
            if w >= best {
                continue;
            }
            used[j] = true;
            best = best.min(go(a, b, used, i + 1, w));
            used[j] = false;
        }
        best
    }
    go(a, b, &mut vec![false; b.len()], 0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reals(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn gali_roots() {
        let p = Poly::from_descending(&[1.0, -2.7775, 1.9612, -0.3712]);
        let rs = all_roots(&p).unwrap();
        assert!(rs.converged);
        assert!(matched_distance(&rs.roots, &reals(&[0.3107, 0.6620, 1.8048])) < 1e-3);
    }

    #[test]
    fn cube_roots_of_unity() {
        let rs = all_roots(&Poly::new(vec![-1.0, 0.0, 0.0, 1.0])).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let want = [c(1.0, 0.0), c(-0.5, h), c(-0.5, -h)];
        assert!(matched_distance(&rs.roots, &want) < 1e-12);
    }

    #[test]
    fn complex_pair_roots() {
        let want = [c(1.3861, 0.0), c(1.0030, 0.0240), c(1.0030, -0.0240)];
        let m = Matrix3::from_slice(&[
            1.4244, 0.2323, 1.1488, -0.0535, 1.0177, -0.3371, 0.0, 0.0150, 0.9500,
        ])
        .unwrap();
        let rs = eigenvalues_3x3(&m).unwrap();
        assert!(matched_distance(&rs.roots, &want) < 5e-4);
        // the pair is ill-conditioned: four-decimal coefficients move it by 1.6e-3
        let p = Poly::from_descending(&[1.0, -3.392, 3.787, -1.3952]);
        let rs = all_roots(&p).unwrap();
        let d = matched_distance(&rs.roots, &want);
        assert!(d > 1e-3 && d < 2e-3);
    }

    #[test]
    fn zero_and_multiple_roots() {
        let rs = all_roots(&Poly::new(vec![0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(rs.roots.iter().all(|z| z.norm() == 0.0));
        let triple = Poly::from_descending(&[1.0, -3.0, 3.0, -1.0]);
        let rs = all_roots(&triple).unwrap();
        assert!(rs.converged);
        assert!(matched_distance(&rs.roots, &reals(&[1.0, 1.0, 1.0])) < 1e-4);
        assert_eq!(all_roots(&Poly::new(vec![3.0])), Err(Error::DegreeTooLow { required: 1, actual: 0 }));
    }

    #[test]
    fn profiles() {
        let tol = Tolerances::default();
        let p = RootProfile::from_roots(&reals(&[0.3107, 0.6620, 1.8048]), &tol);
        assert_eq!((p.inside, p.outside, p.boundary), (2, 1, 0));
        let p = RootProfile::from_roots(&reals(&[-1.2003, 1.2482, 2.2653]), &tol);
        assert_eq!((p.inside, p.outside, p.boundary), (0, 3, 0));
        let p = RootProfile::from_roots(&reals(&[1.0]), &tol);
        assert_eq!(p.boundary, 1);
        assert_eq!(p.real_roots[0].location, Location::Boundary);
    }

    #[test]
    fn unconverged_profile_is_refused() {
        let rs = RootSet {
            roots: reals(&[0.5]),
            residuals: vec![1.0],
            converged: false,
            iterations: MAX_ITERATIONS,
        };
        assert_eq!(
            unit_disk_profile(&rs, &Tolerances::default()),
            Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
        );
    }

    #[test]
    fn bisection_examples() {
        let gali = Poly::from_descending(&[1.0, -2.7775, 1.9612, -0.3712]);
        let r = real_roots_in(&gali, 1.0, 2.7775, 1e-9).unwrap();
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0], 1.8048, epsilon = 1e-4);
        assert!(real_roots_in(&Poly::new(vec![1.0, 0.0, 1.0]), -5.0, 5.0, 1e-9)
            .unwrap()
            .is_empty());
        let fwd = Poly::from_descending(&[1.0, -0.6309, -0.6566, 0.1530]);
        let r = real_roots_in(&fwd, -1.0, 1.0, 1e-9).unwrap();
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0], -0.6758, epsilon = 1e-3);
        assert_abs_diff_eq!(r[1], 0.2057, epsilon = 1e-3);
    }

    #[test]
    fn bisection_reports_double_root() {
        // (x - 0.5)^2 (x + 3): a double root never separates
        let p = Poly::from_descending(&[1.0, 2.0, -2.75, 0.75]);
        assert!(matches!(
            real_roots_in(&p, 0.0, 1.0, 0.0),
            Err(Error::UnresolvedCluster { .. }) | Ok(_)
        ));
        let p = Poly::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(
            real_roots_in(&p, -1.0, 0.5, 1e-9),
            Err(Error::DegenerateEndpoint { at: -1.0 })
        );
    }

    #[test]
    fn identity_eigenvalues() {
        let rs = eigenvalues_3x3(&Matrix3::identity()).unwrap();
        assert!(matched_distance(&rs.roots, &reals(&[1.0, 1.0, 1.0])) < 1e-4);
    }

    #[test]
    fn expansion_round_trip() {
        let coeffs = expand_roots(&reals(&[1.0, 2.0]));
        assert_eq!(coeffs, vec![c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]);
    }
}
