//! Smooth sphere above a small-amplitude, high-frequency corrugated wall.
//!
//! The wall is `z = ε γ(x/ε, y/ε)` with `max γ = 0` and depth `λ = −min γ`.
//! The drag is trapped between a flat wall at the lowest point and one at
//! the highest point, and in the regime `ε ≪ h ≪ 1` behaves like the drag
//! above a flat wall shifted down by `εβ`, with `β` the mean eigenvalue of
//! the wall mobility tensor.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::estimate::{Branch, DragEstimate, Method};
use crate::geometry::check_gap;

/// Eigenvalues of the symmetric positive definite 2×2 mobility tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobilityTensor {
    pub beta_x: f64,
    pub beta_y: f64,
}

impl MobilityTensor {
    pub fn new(beta_x: f64, beta_y: f64) -> Result<Self> {
        if !(beta_x > 0.0 && beta_y > 0.0 && beta_x.is_finite() && beta_y.is_finite()) {
            return domain(format!(
                "mobility eigenvalues must be finite and > 0, got ({beta_x}, {beta_y})"
            ));
        }
        Ok(MobilityTensor { beta_x, beta_y })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrugationData {
    pub eps: f64,
    pub lambda: f64,
}

impl CorrugationData {
    pub fn new(eps: f64, lambda: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return domain(format!("corrugation amplitude must be > 0, got {eps}"));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return domain(format!("corrugation depth must be >= 0, got {lambda}"));
        }
        Ok(CorrugationData { eps, lambda })
    }
}

/// Leading-order bounds `6π/(h + λε) ≲ F_h ≲ 6π/h`. The `O(|ln ·|)`
/// remainders are reported as `err_estimate` with unit constants.
pub fn drag_bounds(h: f64, cd: &CorrugationData) -> Result<(DragEstimate, DragEstimate)> {
    check_gap(h)?;
    let deep = h + cd.lambda * cd.eps;
    let lower = DragEstimate::bound(6.0 * PI / deep, Method::LowerBound, Some(deep.ln().abs()));
    let upper = DragEstimate::bound(6.0 * PI / h, Method::UpperBound, Some(h.ln().abs()));
    Ok((lower, upper))
}

/// `β = (β_x + β_y)/2`.
pub fn effective_beta(mt: &MobilityTensor) -> f64 {
    0.5 * (mt.beta_x + mt.beta_y)
}

/// Above this `ε/h` the shifted-wall formula is flagged as out of regime.
pub const SHIFTED_WALL_REGIME_LIMIT: f64 = 0.1;

/// `6π/(h + εβ)`.
pub fn shifted_wall_drag(h: f64, eps: f64, beta: f64) -> Result<DragEstimate> {
    check_gap(h)?;
    if !(eps >= 0.0 && eps.is_finite()) {
        return domain(format!("eps must be finite and >= 0, got {eps}"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("effective slip must be finite and >= 0, got {beta}"));
    }
    let ratio = eps / h;
    Ok(
        DragEstimate::asymptotic(6.0 * PI / (h + eps * beta), ratio, Branch::ShiftedWall)
            .flag_out_of_regime(ratio > SHIFTED_WALL_REGIME_LIMIT),
    )
}
