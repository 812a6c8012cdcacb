//! Root location and determinacy analysis for small New Keynesian models.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: dense real polynomials, Fourier sequences, sign variations and
//!   the Budan–Fourier, Descartes and Cauchy root bounds.
//! * [`oracle`]: an independent numeric ground truth (Aberth–Ehrlich roots,
//!   unit-disk profiles, bisection root isolation).
//! * [`models`]: parameter records and the matrices / characteristic
//!   polynomials of the five model families.
//! * [`determinacy`]: Blanchard–Kahn counting, the analytic classifiers and
//!   the analytic-vs-oracle cross validation.
//! * [`family`], [`sweep`], [`verify`]: the string-keyed front end shared by
//!   the command line tool and the Python bindings.

pub mod determinacy;
pub mod error;
pub mod family;
pub mod models;
pub mod oracle;
pub mod poly;
pub mod region;
pub mod sampling;
pub mod sweep;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use poly::Poly;
pub use tolerance::Tolerances;
