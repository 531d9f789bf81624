//! Smooth sphere with Navier slip on both the solid and the wall.
//!
//! Per radius, the stream function is `(r/2)·Φ(z/(h + γ_S))` with `Φ` the
//! cubic minimizing
//!
//! ```text
//! ∫₀¹ |Φ''|² dt + α_S |Φ'(1)|² + α_P |Φ'(0)|²,   Φ(0) = 0, Φ(1) = 1,
//! ```
//!
//! where `α_S = (1 + γ'_S²)^{3/2} (h + γ_S)/β_S` and `α_P = (h + γ_S)/β_P`.
//! The minimal energy splits as `I₁ + I₂` and the drag is
//! `(π/2) ∫₀^{r0} (I₁ + I₂) r³ dr / (h + γ_S)³`.
//!
//! The solid curvature correction to the slip coefficient is absorbed into
//! `β_S`. Rough-power profiles are accepted as an extension: the formulas
//! only need `γ_S` and `γ'_S`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::estimate::{Branch, DragEstimate};
use crate::geometry::{self, check_gap, GapProfile, ProfileKind};
use crate::noslip::radial_breaks;
use crate::quad::{self, QuadConfig};

/// Slip lengths of the solid (`beta_s`) and the wall (`beta_p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlipParams {
    pub beta_s: f64,
    pub beta_p: f64,
}

impl SlipParams {
    pub fn new(beta_s: f64, beta_p: f64) -> Result<Self> {
        for (name, b) in [("beta_s", beta_s), ("beta_p", beta_p)] {
            if !(b >= 0.0 && b.is_finite()) {
                return domain(format!("{name} must be finite and >= 0, got {b}"));
            }
        }
        Ok(SlipParams { beta_s, beta_p })
    }

    fn require_positive(&self) -> Result<()> {
        if self.beta_s <= 0.0 || self.beta_p <= 0.0 {
            return domain("slip lengths must be > 0; use the no-slip model for zero slip");
        }
        Ok(())
    }
}

/// Robin weights of the per-radius problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinCoeffs {
    pub alpha_s: f64,
    pub alpha_p: f64,
}

impl RobinCoeffs {
    fn denominator(&self) -> f64 {
        12.0 + 4.0 * (self.alpha_s + self.alpha_p) + self.alpha_s * self.alpha_p
    }
}

/// `Φ(t) = c3 t³ + c2 t² + c1 t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicMinimizer {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
}

impl CubicMinimizer {
    pub fn eval(&self, t: f64) -> f64 {
        ((self.c3 * t + self.c2) * t + self.c1) * t
    }

    pub fn derivative(&self, t: f64) -> f64 {
        (3.0 * self.c3 * t + 2.0 * self.c2) * t + self.c1
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        6.0 * self.c3 * t + 2.0 * self.c2
    }

    /// `∫₀¹|Φ''|² + α_S Φ'(1)² + α_P Φ'(0)²`, in closed form.
    pub fn energy(&self, rc: &RobinCoeffs) -> f64 {
        // Φ'' = a t + b with a = 6 c3, b = 2 c2.
        let (a, b) = (6.0 * self.c3, 2.0 * self.c2);
        let bending = a * a / 3.0 + a * b + b * b;
        bending + rc.alpha_s * self.derivative(1.0).powi(2) + rc.alpha_p * self.derivative(0.0).powi(2)
    }
}

/// Robin weights at radius `r`.
pub fn robin_coeffs(profile: &GapProfile, h: f64, r: f64, sp: &SlipParams) -> Result<RobinCoeffs> {
    check_gap(h)?;
    sp.require_positive()?;
    let g = geometry::gap(profile, h, r)?;
    let slope = geometry::gamma_s_prime(profile, r)?;
    Ok(RobinCoeffs {
        alpha_s: (1.0 + slope * slope).powf(1.5) * g / sp.beta_s,
        alpha_p: g / sp.beta_p,
    })
}

/// Minimizing cubic for the given Robin weights.
pub fn phi_coeffs(rc: &RobinCoeffs) -> CubicMinimizer {
    let (s, p) = (rc.alpha_s, rc.alpha_p);
    let d = rc.denominator();
    CubicMinimizer {
        c3: -2.0 * (s + s * p + p) / d,
        c2: 3.0 * (2.0 + s) * p / d,
        c1: 6.0 * (2.0 + s) / d,
    }
}

pub fn integrand_i1(rc: &RobinCoeffs) -> f64 {
    let (s, p) = (rc.alpha_s, rc.alpha_p);
    let d = rc.denominator();
    12.0 * (s * s * p * p + 5.0 * (s * s * p + p * p * s) + 4.0 * (s * s + p * p) + 20.0 * s * p) / (d * d)
}

pub fn integrand_i2(rc: &RobinCoeffs) -> f64 {
    let d = rc.denominator();
    144.0 * (rc.alpha_s + rc.alpha_p) / (d * d)
}

/// Exact reduced drag `(π/2) ∫₀^{r0} (I₁ + I₂) r³ dr / (h + γ_S)³`.
pub fn drag_integral_slip(profile: &GapProfile, h: f64, sp: &SlipParams, cfg: &QuadConfig) -> Result<DragEstimate> {
    check_gap(h)?;
    sp.require_positive()?;
    profile.validated()?;
    if let ProfileKind::Corrugated { .. } = profile.kind {
        return domain("slip drag needs a smooth or rough-power solid profile");
    }
    let (eps, alpha) = profile.roughness();
    let integrand = |r: f64| {
        let root = (1.0 - r * r).sqrt();
        let mut g = h + r * r / (1.0 + root);
        let mut slope = r / root;
        if eps > 0.0 {
            g += eps * r.powf(1.0 + alpha);
            slope += eps * (1.0 + alpha) * r.powf(alpha);
        }
        let rc = RobinCoeffs {
            alpha_s: (1.0 + slope * slope).powf(1.5) * g / sp.beta_s,
            alpha_p: g / sp.beta_p,
        };
        let x = r / g;
        (integrand_i1(&rc) + integrand_i2(&rc)) * x * x * x
    };
    let mut pts = radial_breaks(profile, h);
    // The weights cross over from slip- to no-slip-dominated where the gap
    // is comparable to the slip lengths.
    for b in [sp.beta_s, sp.beta_p] {
        let r = (2.0 * b).sqrt();
        if r < profile.r0 && !pts.iter().any(|&p| (p - r).abs() < 1e-3 * r) {
            pts.push(r);
        }
    }
    pts.sort_by(f64::total_cmp);
    let res = quad::integrate_points(integrand, &pts, cfg)?;
    Ok(DragEstimate::exact(0.5 * PI * res.value, 0.5 * PI * res.err_estimate))
}

/// Threshold on `h/β` above which the logarithmic law is flagged.
pub const HOCKING_REGIME_LIMIT: f64 = 0.1;

/// Logarithmic drag `π (1/β_S + 1/β_P) |ln h|` for `h ≪ β_S, β_P`.
pub fn hocking_asym(h: f64, sp: &SlipParams) -> Result<DragEstimate> {
    check_gap(h)?;
    sp.require_positive()?;
    let value = PI * (1.0 / sp.beta_s + 1.0 / sp.beta_p) * h.ln().abs();
    let ratio = (h / sp.beta_s).max(h / sp.beta_p);
    Ok(DragEstimate::asymptotic(value, ratio, Branch::Hocking).flag_out_of_regime(ratio > HOCKING_REGIME_LIMIT))
}

/// Envelope constants `(c', C')` for the regime where `h/β` is of order one
/// or larger. Only their existence is known; these values are engineering
/// choices that bracket the no-slip result `6π/h`.
pub const ORDER_ONE_LOWER: f64 = 1.0;
pub const ORDER_ONE_UPPER: f64 = 6.0 * PI * 1.1;

/// `(c'/h, C'/h)`.
pub fn drag_bounds_order_one(h: f64) -> Result<(f64, f64)> {
    check_gap(h)?;
    Ok((ORDER_ONE_LOWER / h, ORDER_ONE_UPPER / h))
}
