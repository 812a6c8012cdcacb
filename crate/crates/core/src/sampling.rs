//! Seeded uniform draws over per-family parameter boxes.
//!
//! Draw `i` of a run uses its own ChaCha stream, so results do not depend on
//! the order or the thread in which draws are evaluated.
//!
//! | family | box |
//! |---|---|
//! | gali | β ∈ (0.5, 0.999), σ, η, k ∈ (0.01, 5) |
//! | bm-noninertial | β ∈ (0.5, 0.999), σ ∈ (0.1, 5), k ∈ (0.01, 1), φx, φπ ∈ (0, 5) |
//! | bm-inertial, bm-forward | as above, plus φr ∈ (0, 3) |
//! | gabaix-cubic | b, c ∈ (0, 4), d ∈ (0, 2) |
//! | gabaix-matrix | entries ∈ (−0.5, 1.5) |
//! | blp | β ∈ (0.5, 0.999), η ∈ (0, 0.9), γ ∈ (0, 1), ρR ∈ (0, 0.9), k ∈ (0.001, 0.5), φ ∈ (0.1, 3), φY ∈ (0, 10), φπ ∈ (0, 3) |

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{Family, ModelPoint, ParamSet};
use crate::models::Matrix3;
use crate::poly::Poly;

/// The generator for draw `index` of a run seeded with `seed`. `salt`
/// separates independent suites sharing a seed.
pub fn draw_rng(seed: u64, salt: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

/// `(name, low, high)` for each parameter of the family.
pub fn parameter_box(family: Family) -> Vec<(&'static str, f64, f64)> {
    let bm = vec![
        ("k", 0.01, 1.0),
        ("sigma", 0.1, 5.0),
        ("beta", 0.5, 0.999),
        ("phi_x", 0.0, 5.0),
        ("phi_pi", 0.0, 5.0),
    ];
    match family {
        Family::Gali => vec![
            ("beta", 0.5, 0.999),
            ("sigma", 0.01, 5.0),
            ("eta", 0.01, 5.0),
            ("k", 0.01, 5.0),
        ],
        Family::BmNonInertial => bm,
        Family::BmInertial | Family::BmForward => {
            let mut v = bm;
            v.push(("phi_r", 0.0, 3.0));
            v
        }
        Family::GabaixCubic => vec![("b", 0.0, 4.0), ("c", 0.0, 4.0), ("d", 0.0, 2.0)],
        Family::GabaixMatrix => family
            .param_names()
            .iter()
            .map(|n| (*n, -0.5, 1.5))
            .collect(),
        Family::Blp => vec![
            ("beta", 0.5, 0.999),
            ("eta", 0.0, 0.9),
            ("gamma", 0.0, 1.0),
            ("rho_r", 0.0, 0.9),
            ("k", 0.001, 0.5),
            ("varphi", 0.1, 3.0),
            ("phi_y", 0.0, 10.0),
            ("phi_pi", 0.0, 3.0),
        ],
    }
}

fn family_salt(family: Family) -> u64 {
    Family::ALL.iter().position(|f| *f == family).unwrap() as u64 + 1
}

/// Draw `index` of `family`. Draws landing on an excluded edge of a box are
/// redrawn from the same stream.
pub fn sample_point(family: Family, seed: u64, index: u64) -> ModelPoint {
    let mut rng = draw_rng(seed, family_salt(family), index);
    let bounds = parameter_box(family);
    loop {
        let params: ParamSet = bounds
            .iter()
            .map(|&(n, lo, hi)| (n.to_string(), rng.random_range(lo..hi)))
            .collect();
        if let Ok(p) = ModelPoint::from_params(family, &params) {
            return p;
        }
    }
}

/// A polynomial of degree at most `max_degree` with coefficients uniform in
/// `[-bound, bound]`; never the zero polynomial.
pub fn random_poly(rng: &mut impl Rng, max_degree: usize, bound: f64) -> Poly {
    loop {
        let n = rng.random_range(0..=max_degree);
        let coeffs: Vec<f64> = (0..=n).map(|_| rng.random_range(-bound..=bound)).collect();
        let p = Poly::new(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A 3×3 matrix with entries uniform in `[-bound, bound]`.
pub fn random_matrix(rng: &mut impl Rng, bound: f64) -> Matrix3 {
    let v: Vec<f64> = (0..9).map(|_| rng.random_range(-bound..=bound)).collect();
    Matrix3::from_slice(&v).expect("finite entries")
}
