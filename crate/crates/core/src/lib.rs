//! Evaluation of the spherical clothoid — the spherical curve whose geodesic
//! curvature grows linearly with arc length — from its closed-form Kummer
//! function coordinates, together with the special-function machinery needed
//! to cross-verify every representation of it numerically.
//!
//! The crate is organised around independent routes to the same quantities so
//! that each one can be checked against the others:
//!
//! - [`special`]: complex Pochhammer symbols, log-gamma, the Kummer function
//!   ₁F₁, Gauss' ₂F₁ for real argument, and the even/odd parabolic cylinder
//!   solutions built from ₁F₁.
//! - [`humbert`]: the two-variable confluent series φ₁, φ₂ and Ξ₁, plus the
//!   single-sum Ξ₁ expansion with ₂F₁ coefficients.
//! - [`curve`]: the curve itself — positions, derivatives, Frenet data,
//!   defining-equation residuals, both stereographic projections, and the
//!   alternative Humbert-series coordinate representations.
//! - [`oracle`]: fixed-step RK4 integration of the governing fourth-order
//!   ODE, of the equivalent two-level complex system, and of the
//!   rolling-sphere kinematics, with frame alignment back to the canonical
//!   initial conditions.
//! - [`mp_polys`]: associated Meixner-Pollaczek polynomials, the coordinate
//!   series built on them, and three generating-function identities.
//! - [`identities`]: residual evaluators for every identity relating the
//!   routes above, packaged as a seeded, machine-readable suite.
//!
//! All evaluators are pure functions; nothing here holds global state, so
//! concurrent use needs no coordination.

pub mod curve;
pub mod error;
pub mod humbert;
pub mod identities;
pub mod mp_polys;
pub mod oracle;
pub mod special;

mod series;

pub use error::{Error, Result};
pub use series::{DoubleSeriesControl, EvalResult, SeriesControl};

/// Double-precision complex scalar used for parameters, arguments and
/// residuals throughout.
pub type Complex = num_complex::Complex64;
