//! Solid and wall profiles.
//!
//! The solid is a unit sphere whose lower tip sits at distance `h` above a
//! flat wall. Near the tip the surface is the graph `z = h + γ_S(r)` for
//! `r ≤ r0`, with
//!
//! ```text
//! γ_S(r) = 1 − √(1 − r²) + ε r^(1+α)
//! ```
//!
//! `ε = 0` is the smooth sphere. A corrugated wall is described only by its
//! amplitude and depth; its drag formulas never need the oscillation shape.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub const DEFAULT_R0: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileKind {
    SmoothSphere,
    /// Sphere with a power-law perturbation `ε r^(1+α)`, `0 ≤ α < 1`.
    RoughPower {
        eps: f64,
        alpha: f64,
    },
    /// Smooth sphere above a wall of amplitude `eps` and depth `lambda = −min γ`.
    Corrugated {
        eps: f64,
        lambda: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapProfile {
    #[serde(flatten)]
    pub kind: ProfileKind,
    #[serde(default = "default_r0")]
    pub r0: f64,
}

fn default_r0() -> f64 {
    DEFAULT_R0
}

impl GapProfile {
    pub fn smooth() -> Self {
        GapProfile {
            kind: ProfileKind::SmoothSphere,
            r0: DEFAULT_R0,
        }
    }

    pub fn rough(eps: f64, alpha: f64) -> Result<Self> {
        GapProfile {
            kind: ProfileKind::RoughPower { eps, alpha },
            r0: DEFAULT_R0,
        }
        .validated()
    }

    pub fn corrugated(eps: f64, lambda: f64) -> Result<Self> {
        GapProfile {
            kind: ProfileKind::Corrugated { eps, lambda },
            r0: DEFAULT_R0,
        }
        .validated()
    }

    pub fn with_r0(self, r0: f64) -> Result<Self> {
        GapProfile { r0, ..self }.validated()
    }

    /// Checks the parameter ranges; every constructor goes through here.
    pub fn validated(self) -> Result<Self> {
        if !(self.r0 > 0.0 && self.r0 <= 1.0) {
            return domain(format!("r0 must lie in (0, 1], got {}", self.r0));
        }
        match self.kind {
            ProfileKind::SmoothSphere => {}
            ProfileKind::RoughPower { eps, alpha } => {
                if !(eps >= 0.0 && eps.is_finite()) {
                    return domain(format!("eps must be finite and >= 0, got {eps}"));
                }
                check_alpha(alpha)?;
            }
            ProfileKind::Corrugated { eps, lambda } => {
                if !(eps > 0.0 && eps.is_finite()) {
                    return domain(format!("corrugation amplitude must be > 0, got {eps}"));
                }
                if !(lambda >= 0.0 && lambda.is_finite()) {
                    return domain(format!("corrugation depth must be >= 0, got {lambda}"));
                }
            }
        }
        Ok(self)
    }

    /// `(ε, α)` of the solid perturbation; zero amplitude for smooth and
    /// corrugated cases, where the solid itself is a sphere.
    pub fn roughness(&self) -> (f64, f64) {
        match self.kind {
            ProfileKind::RoughPower { eps, alpha } => (eps, alpha),
            _ => (0.0, 0.0),
        }
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= 0.0 && r <= self.r0) {
            return domain(format!("radius {r} outside [0, {}]", self.r0));
        }
        Ok(())
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return domain(format!("alpha must lie in [0, 1), got {alpha}"));
    }
    Ok(())
}

pub(crate) fn check_gap(h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("gap h must be finite and > 0, got {h}"));
    }
    Ok(())
}

// 1 − √(1 − r²) written as r²/(1 + √(1 − r²)) to avoid cancellation at small r.
fn sphere_cap(r: f64) -> f64 {
    let r2 = r * r;
    r2 / (1.0 + (1.0 - r2).sqrt())
}

/// Height `γ_S(r)` of the solid surface above its tip.
pub fn gamma_s(profile: &GapProfile, r: f64) -> Result<f64> {
    profile.check_radius(r)?;
    let (eps, alpha) = profile.roughness();
    let mut g = sphere_cap(r);
    if eps > 0.0 {
        g += eps * r.powf(1.0 + alpha);
    }
    Ok(g)
}

/// Slope `γ'_S(r) = r/√(1 − r²) + ε(1 + α) r^α`, evaluated analytically.
pub fn gamma_s_prime(profile: &GapProfile, r: f64) -> Result<f64> {
    profile.check_radius(r)?;
    let (eps, alpha) = profile.roughness();
    let mut d = r / (1.0 - r * r).sqrt();
    if eps > 0.0 {
        d += eps * (1.0 + alpha) * r.powf(alpha);
    }
    Ok(d)
}

/// Fluid gap `h + γ_S(r)` between wall and solid at radius `r`.
pub fn gap(profile: &GapProfile, h: f64, r: f64) -> Result<f64> {
    check_gap(h)?;
    Ok(h + gamma_s(profile, r)?)
}

/// Regime parameter `β = ε h^((α−1)/2)`.
pub fn regime_beta(h: f64, eps: f64, alpha: f64) -> Result<f64> {
    check_gap(h)?;
    if !(eps >= 0.0 && eps.is_finite()) {
        return domain(format!("eps must be finite and >= 0, got {eps}"));
    }
    check_alpha(alpha)?;
    if eps == 0.0 {
        return Ok(0.0);
    }
    Ok(eps * h.powf((alpha - 1.0) / 2.0))
}
