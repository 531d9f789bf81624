//! Rough solid over a flat no-slip wall.
//!
//! The drag of a solid with gap profile `h + γ_S(r)` is bounded below by the
//! lubrication integral
//!
//! ```text
//! F̃_h = 6π ∫₀^{r0} r³ dr / (h + γ_S(r))³
//! ```
//!
//! For `γ_S(r) = 1 − √(1−r²) + ε r^(1+α)` the rescaling `r = √h s` reduces it
//! to `(6π/h)·I(β)` up to a remainder controlled by `J(β, h)`, where
//! `β = ε h^((α−1)/2)` and
//!
//! ```text
//! I(β)    = ∫₀^∞        s³ ds / (1 + s²/2 + β s^(1+α))³
//! J(β, h) = ∫₀^{r0/√h}  s⁷ ds / (1 + s²/2 + β s^(1+α))⁴
//! ```
//!
//! `I(β) ≈ 1/(1 + λ_α β)` for small β, and decays as a power of β (with a
//! logarithm at α = 1/3) for large β, with prefactor `μ_α`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::estimate::{Branch, DragEstimate};
use crate::geometry::{self, check_alpha, check_gap, GapProfile, ProfileKind};
use crate::quad::{self, QuadConfig, QuadResult};

/// Half-width of the band around α = 1/3 where the logarithmic large-β law
/// replaces the power laws.
pub const LOG_BRANCH_BAND: f64 = 1e-3;

const ONE_THIRD: f64 = 1.0 / 3.0;

/// Log-spaced points `lo·√10^k` strictly inside `(lo, hi)`, plus `lo` and `hi`.
pub fn log_breaks(lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    let step = 10f64.sqrt();
    let mut p = lo * step;
    while p < hi / 1.5 {
        pts.push(p);
        p *= step;
    }
    pts.push(hi);
    pts
}

/// Radial break points `0 < … < r0` resolving every length scale of a
/// lubrication integrand at gap `h`.
pub(crate) fn radial_breaks(profile: &GapProfile, h: f64) -> Vec<f64> {
    let r0 = profile.r0;
    let (eps, alpha) = profile.roughness();
    let mut smallest = h.sqrt().min(r0);
    if eps > 0.0 {
        smallest = smallest.min((h / eps).powf(1.0 / (1.0 + alpha)));
    }
    let floor = 1e-2 * smallest;
    let mut pts = vec![0.0];
    if floor < r0 / 1.5 {
        pts.extend(log_breaks(floor, r0));
    } else {
        pts.push(r0);
    }
    pts
}

fn check_profile(profile: &GapProfile) -> Result<()> {
    profile.validated()?;
    if let ProfileKind::Corrugated { .. } = profile.kind {
        return domain("lubrication integral needs a smooth or rough-power solid profile");
    }
    Ok(())
}

/// Exact lubrication drag `6π ∫₀^{r0} r³/(h + γ_S)³ dr`.
pub fn drag_integral(profile: &GapProfile, h: f64, cfg: &QuadConfig) -> Result<DragEstimate> {
    check_gap(h)?;
    check_profile(profile)?;
    let (eps, alpha) = profile.roughness();
    let integrand = |r: f64| {
        let cap = r * r / (1.0 + (1.0 - r * r).sqrt());
        let g = h + cap + if eps > 0.0 { eps * r.powf(1.0 + alpha) } else { 0.0 };
        let x = r / g;
        x * x * x
    };
    let res = quad::integrate_points(integrand, &radial_breaks(profile, h), cfg)?;
    Ok(DragEstimate::exact(6.0 * PI * res.value, 6.0 * PI * res.err_estimate))
}

/// Lubrication drag for an arbitrary positive gap function on `[0, r0]`.
pub fn drag_integral_for_gap<G: Fn(f64) -> f64>(gap: G, r0: f64, cfg: &QuadConfig) -> Result<DragEstimate> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return domain(format!("r0 must be positive, got {r0}"));
    }
    let res = quad::integrate(|r| (r / gap(r)).powi(3), 0.0, r0, cfg)?;
    Ok(DragEstimate::exact(6.0 * PI * res.value, 6.0 * PI * res.err_estimate))
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("beta must be finite and >= 0, got {beta}"));
    }
    Ok(())
}

// Length scales in the rescaled variable s: where β s^(1+α) ≈ 1 and where
// β s^(1+α) ≈ s²/2.
fn rescaled_breaks(beta: f64, alpha: f64) -> (f64, f64) {
    if beta == 0.0 {
        return (0.1, 10.0);
    }
    let inner = beta.powf(-1.0 / (1.0 + alpha));
    let outer = (2.0 * beta).powf(1.0 / (1.0 - alpha));
    let lo = inner.min(outer).min(1.0) * 0.1;
    let hi = inner.max(outer).max(1.0) * 10.0;
    (lo, hi)
}

/// `I(β) = ∫₀^∞ s³ ds / (1 + s²/2 + β s^(1+α))³`.
pub fn cal_i(beta: f64, alpha: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_beta(beta)?;
    check_alpha(alpha)?;
    let f = |s: f64| {
        let d = 1.0 + 0.5 * s * s + beta * s.powf(1.0 + alpha);
        s.powi(3) / (d * d * d)
    };
    let (lo, hi) = rescaled_breaks(beta, alpha);
    quad::integrate_semi_infinite_points(f, 0.0, &log_breaks(lo, hi), cfg)
}

/// `J(β, h) = ∫₀^{r0/√h} s⁷ ds / (1 + s²/2 + β s^(1+α))⁴`.
pub fn cal_j(beta: f64, h: f64, alpha: f64, r0: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_beta(beta)?;
    check_gap(h)?;
    check_alpha(alpha)?;
    if !(r0 > 0.0 && r0 <= 1.0) {
        return domain(format!("r0 must lie in (0, 1], got {r0}"));
    }
    let upper = r0 / h.sqrt();
    let f = |s: f64| {
        let d = 1.0 + 0.5 * s * s + beta * s.powf(1.0 + alpha);
        let d2 = d * d;
        s.powi(7) / (d2 * d2)
    };
    let (lo, hi) = rescaled_breaks(beta, alpha);
    let mut pts = vec![0.0];
    pts.extend(log_breaks(lo, hi).into_iter().filter(|&p| p < upper));
    pts.push(upper);
    quad::integrate_points(f, &pts, cfg)
}

/// Closed form of `∫₀^∞ 3 s^(4+α) ds / (1 + s²/2)⁴`:
/// `λ_α = 2^((α+1)/2) π (3+α)(1−α²) / (8 cos(πα/2))`.
pub fn lambda_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2f64.powf(0.5 * (alpha + 1.0)) * PI * (3.0 + alpha) * (1.0 - alpha * alpha) / (8.0 * (0.5 * PI * alpha).cos()))
}

fn is_log_case(alpha: f64) -> bool {
    (alpha - ONE_THIRD).abs() < 1e-12
}

/// Prefactor `μ_α` of the large-β power law of `I(β)`.
///
/// For α < 1/3 it is `∫₀^∞ s³/(s²/2 + s^(1+α))³ ds`, for α > 1/3 it is
/// `(1/(1+α)) ∫₀^∞ u^((3−α)/(1+α)) / (1+u)³ du`. Both integrals have an
/// endpoint singularity that is removed by a power substitution before
/// quadrature. At α = 1/3 neither converges.
pub fn mu_alpha(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    if is_log_case(alpha) {
        return domain("mu_alpha is undefined at alpha = 1/3 (logarithmic regime)");
    }
    if alpha < ONE_THIRD {
        // s = y^q with q(1 − 3α) = 1 makes the integrand regular at 0.
        let q = 1.0 / (1.0 - 3.0 * alpha);
        let e = q * (1.0 - alpha);
        let f = |y: f64| {
            let d = 1.0 + 0.5 * y.powf(e);
            q / (d * d * d)
        };
        let knee = 2f64.powf(1.0 / e);
        Ok(quad::integrate_semi_infinite_points(f, 0.0, &[0.5 * knee, knee, 2.0 * knee], cfg)?.value)
    } else {
        // u = t/(1−t), then 1 − t = y^k with k(2 − p) = 1.
        let p = (3.0 - alpha) / (1.0 + alpha);
        let k = 1.0 / (2.0 - p);
        let f = |y: f64| k * (1.0 - y.powf(k)).powf(p);
        let knee = 0.5f64.powf(1.0 / k);
        let pts = [0.0, 0.5 * knee, knee, 0.5 * (1.0 + knee), 1.0];
        let mut pts: Vec<f64> = pts.to_vec();
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        Ok(quad::integrate_points(f, &pts, cfg)?.value / (1.0 + alpha))
    }
}

/// `λ_α` and `μ_α` for one roughness exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaConstants {
    pub alpha: f64,
    pub lambda_alpha: f64,
    /// Absent at α = 1/3.
    pub mu_alpha: Option<f64>,
}

impl AlphaConstants {
    pub fn new(alpha: f64, cfg: &QuadConfig) -> Result<Self> {
        let lambda_alpha = lambda_alpha(alpha)?;
        let mu_alpha = if is_log_case(alpha) {
            None
        } else {
            Some(mu_alpha(alpha, cfg)?)
        };
        Ok(AlphaConstants {
            alpha,
            lambda_alpha,
            mu_alpha,
        })
    }
}

fn check_asym_inputs(h: f64, eps: f64, alpha: f64) -> Result<f64> {
    geometry::regime_beta(h, eps, alpha)
}

/// Small-β drag `6π/(h + λ_α ε h^((α+1)/2))`.
pub fn small_beta_drag(h: f64, eps: f64, alpha: f64) -> Result<f64> {
    check_asym_inputs(h, eps, alpha)?;
    let shift = if eps > 0.0 {
        lambda_alpha(alpha)? * eps * h.powf(0.5 * (alpha + 1.0))
    } else {
        0.0
    };
    Ok(6.0 * PI / (h + shift))
}

/// Large-β drag; the branch is chosen by α.
pub fn large_beta_drag(h: f64, eps: f64, alpha: f64, cfg: &QuadConfig) -> Result<(f64, Branch)> {
    check_asym_inputs(h, eps, alpha)?;
    if eps <= 0.0 {
        return domain("large-beta formulas need eps > 0");
    }
    if (alpha - ONE_THIRD).abs() < LOG_BRANCH_BAND {
        return Ok((4.5 * PI * h.ln().abs() / eps.powi(3), Branch::LargeBetaLog));
    }
    let mu = mu_alpha(alpha, cfg)?;
    let value = if alpha > ONE_THIRD {
        6.0 * PI * mu * eps.powf(-4.0 / (1.0 + alpha)) * h.powf(-(3.0 * alpha - 1.0) / (alpha + 1.0))
    } else {
        6.0 * PI * mu * eps.powf(-2.0 / (1.0 - alpha))
    };
    Ok((value, Branch::LargeBetaPower))
}

/// Closed-form drag: small-β formula for `β ≤ 1`, the large-β branch otherwise.
pub fn asym_drag(h: f64, eps: f64, alpha: f64) -> Result<DragEstimate> {
    let beta = check_asym_inputs(h, eps, alpha)?;
    if beta <= 1.0 {
        Ok(DragEstimate::asymptotic(
            small_beta_drag(h, eps, alpha)?,
            beta,
            Branch::SmallBeta,
        ))
    } else {
        let (value, branch) = large_beta_drag(h, eps, alpha, &QuadConfig::default())?;
        Ok(DragEstimate::asymptotic(value, beta, branch))
    }
}
