//! Drag on a solid approaching a flat wall in Stokes flow.
//!
//! The lubrication drag of a smooth sphere diverges like `6π/h` as the gap
//! `h` closes. This crate computes how roughness of the solid
//! ([`noslip`]), Navier slip on the surfaces ([`slip`]) and corrugation of
//! the wall ([`corrugated`]) change that divergence, both by exact
//! quadrature and through closed-form asymptotics. [`dynamics`] integrates
//! the resulting approach and decides whether contact happens. [`oracle1d`]
//! checks the closed-form flow profiles against a discrete minimizer.
//!
//! ```
//! use lubridrag::{noslip, GapProfile, QuadConfig};
//!
//! let rough = GapProfile::rough(0.1, 0.5).unwrap();
//! let d = noslip::drag_integral(&rough, 1e-3, &QuadConfig::default()).unwrap();
//! assert!(d.value < 6.0 * std::f64::consts::PI / 1e-3);
//! ```

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod banded;
pub mod cli;
pub mod corrugated;
pub mod dynamics;
pub mod error;
pub mod estimate;
pub mod geometry;
pub mod noslip;
pub mod oracle1d;
pub mod quad;
pub mod slip;

pub use error::{Error, Result};
pub use estimate::{Branch, DragEstimate, Method, Regime};
pub use geometry::GapProfile;
pub use quad::{QuadConfig, QuadResult};

// The book chapters run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/rough_solids.md")]
    mod rough_solids {}
    #[doc = include_str!("../../../book/src/slip.md")]
    mod slip {}
    #[doc = include_str!("../../../book/src/corrugated.md")]
    mod corrugated {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
