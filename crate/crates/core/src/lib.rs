//! Caustics of plane curves described by inclination equations.
//!
//! A curve is given by its radius of curvature `R(θ)` as a function of the
//! tangent inclination. [`inclination`] reconstructs positions, [`caustic`]
//! builds caustics for a tilt field (evolute, constant skew, reflection),
//! [`skew`] constructs families similar to their own skew evolute and
//! [`pantograph`] solves the mirror similarity equation by series. [`oracle`]
//! recomputes envelopes from rays alone for cross-checks.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `nephroid` | semicircle caustic against its closed form, SVG output |
//! | `cycloid_mirror` | reconstruction, cusp scan and caustic of a cycloid |
//! | `evolute` | evolute length equals the change of radius |
//! | `parabola` | reflected rays meet at the focus |
//! | `envelope_oracle` | numeric envelopes against analytic caustics |
//! | `skew_families` | point-by-point and inverse-position families |
//! | `delay_spirals` | delay families through Lambert W branches |
//! | `puiseux` | cusps on a logarithmic spiral |
//! | `pantograph_m2` | the a = 5/16 mirror, continuation and diagnostics |
//! | `pantograph_family` | factors and coefficients for m = 1..5 |
//! | `lambert_w` | branch values and round trips |
//! | `tan_series` | tangent coefficients and truncation error |
//! | `verify_suites` | seeded verification table |

pub mod caustic;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod inclination;
pub mod literal;
pub mod oracle;
pub mod pantograph;
pub mod quad;
pub mod skew;
pub mod svg;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::PlanePoint;
pub use inclination::{AngleInterval, FrameSample, InclinationCurve};
