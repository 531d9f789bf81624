//! Vertical approach of the solid: `ḧ + ḣ·F(h) = 0`.
//!
//! The velocity obeys the first integral `dv/dh = −F(h)`, so
//! `v(h) = v₀ + ∫_h^{h₀} F`. A solid moving toward the wall reaches it in
//! finite time exactly when `∫₀^{h₀} F < |v₀|`; a drag that is not
//! integrable at `h = 0`, like the smooth no-slip `6π/h`, stops it short of
//! the wall.
//!
//! [`simulate`] integrates the ODE with an adaptive Dormand–Prince 5(4)
//! pair. While the solid approaches with an appreciable speed the gap itself
//! is the independent variable (`dt/dh = 1/v`, `dv/dh = −F`), which stays
//! accurate as `h → 0` and lands exactly on the contact threshold. Once the
//! speed has decayed below a fraction of `|v₀|`, or when the horizon `t_max`
//! is reached first, time takes over.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::corrugated;
use crate::error::{domain, Error, Result};
use crate::geometry::GapProfile;
use crate::noslip::{self, log_breaks};
use crate::quad::{self, QuadConfig};
use crate::slip::{self, SlipParams};

/// A drag law `h ↦ F(h) > 0`.
pub trait DragModel: Sync {
    fn drag(&self, h: f64) -> Result<f64>;
}

impl<F: Fn(f64) -> f64 + Sync> DragModel for F {
    fn drag(&self, h: f64) -> Result<f64> {
        Ok(self(h))
    }
}

/// Exact lubrication drag of a rough (or smooth) solid over a no-slip wall.
#[derive(Debug, Clone, Copy)]
pub struct NoSlipDrag {
    pub profile: GapProfile,
    pub cfg: QuadConfig,
}

impl DragModel for NoSlipDrag {
    fn drag(&self, h: f64) -> Result<f64> {
        Ok(noslip::drag_integral(&self.profile, h, &self.cfg)?.value)
    }
}

/// Exact reduced drag with Navier slip on both surfaces.
#[derive(Debug, Clone, Copy)]
pub struct SlipDrag {
    pub profile: GapProfile,
    pub slip: SlipParams,
    pub cfg: QuadConfig,
}

impl DragModel for SlipDrag {
    fn drag(&self, h: f64) -> Result<f64> {
        Ok(slip::drag_integral_slip(&self.profile, h, &self.slip, &self.cfg)?.value)
    }
}

/// Shifted-wall drag `6π/(h + εβ)` of a corrugated wall.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedWallDrag {
    pub eps: f64,
    pub beta: f64,
}

impl DragModel for ShiftedWallDrag {
    fn drag(&self, h: f64) -> Result<f64> {
        Ok(corrugated::shifted_wall_drag(h, self.eps, self.beta)?.value)
    }
}

fn checked_drag<D: DragModel + ?Sized>(drag: &D, h: f64) -> Result<f64> {
    let f = drag.drag(h)?;
    if !f.is_finite() {
        return Err(Error::NonFiniteDrag { h });
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynState {
    pub t: f64,
    pub h: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// The gap closed (down to the contact threshold) at time `t` with
    /// velocity `v`.
    ContactAt {
        t: f64,
        v: f64,
    },
    /// The solid stopped at `h_star` without touching.
    AsymptoticRest {
        h_star: f64,
    },
    Truncated {
        t_max: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<DynState>,
    pub outcome: Outcome,
}

/// Contact is declared at `h = CONTACT_FRACTION · h₀`.
pub const CONTACT_FRACTION: f64 = 1e-12;
/// Rest is declared once `|v| < REST_FRACTION · |v₀|`.
pub const REST_FRACTION: f64 = 1e-10;

// Gap stepping is entered above, and left below, these fractions of |v₀|.
const GAP_MODE_ENTER: f64 = 1e-2;
const GAP_MODE_LEAVE: f64 = 1e-3;
const MAX_STEPS: usize = 1_000_000;

// Dormand–Prince 5(4).
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type Rhs<'a> = dyn Fn(f64, [f64; 2]) -> Result<Option<[f64; 2]>> + 'a;

// One embedded step; `None` when a stage leaves the admissible region.
fn dp_step(f: &Rhs, x: f64, y: [f64; 2], dx: f64) -> Result<Option<([f64; 2], [f64; 2])>> {
    let mut k = [[0.0; 2]; 7];
    for s in 0..7 {
        let mut ys = y;
        for (j, a) in A[s].iter().enumerate().take(s) {
            ys[0] += dx * a * k[j][0];
            ys[1] += dx * a * k[j][1];
        }
        match f(x + C[s] * dx, ys)? {
            Some(d) => k[s] = d,
            None => return Ok(None),
        }
    }
    let mut y5 = y;
    let mut err = [0.0; 2];
    for s in 0..7 {
        for i in 0..2 {
            y5[i] += dx * B5[s] * k[s][i];
            err[i] += dx * (B5[s] - B4[s]) * k[s][i];
        }
    }
    Ok(Some((y5, err)))
}

// Component 0 is measured relative to `1 + |y|`. The velocity (component 1)
// is held to `tol` in absolute terms, tightened in proportion to `|v|/|v₀|`
// so the decaying tail near rest stays resolved.
fn error_norm(err: [f64; 2], y0: [f64; 2], y1: [f64; 2], weight0: f64, tol: f64, v_scale: f64) -> f64 {
    let first = weight0 * err[0].abs() / (tol * (1.0 + y0[0].abs().max(y1[0].abs())));
    let speed = (y0[1].abs().max(y1[1].abs()) / v_scale).clamp(REST_FRACTION, 1.0);
    first.max(err[1].abs() / (tol * speed))
}

struct Controller {
    prev: f64,
}

impl Controller {
    fn factor(&mut self, err: f64) -> f64 {
        let err = err.max(1e-10);
        let fac = 0.9 * err.powf(-0.7 / 5.0) * self.prev.powf(0.4 / 5.0);
        fac.clamp(0.2, 5.0)
    }

    fn accept(&mut self, err: f64) {
        self.prev = err.max(1e-4);
    }
}

/// Integrates `ḧ + ḣ F(h) = 0` from `(h₀, v₀)` until contact, rest, or `t_max`.
///
/// `tol` bounds the local velocity error of each step; the gap error is
/// weighted by the drag, so both enter the first integral at the same scale.
pub fn simulate<D: DragModel + ?Sized>(drag: &D, h0: f64, v0: f64, t_max: f64, tol: f64) -> Result<Trajectory> {
    if !(h0 > 0.0 && h0.is_finite()) {
        return domain(format!("initial gap must be > 0, got {h0}"));
    }
    if !v0.is_finite() || !(t_max > 0.0) || !(tol > 0.0) {
        return domain("v0 must be finite; t_max and tol must be > 0");
    }
    let mut samples = vec![DynState { t: 0.0, h: h0, v: v0 }];
    if v0 == 0.0 {
        samples.push(DynState {
            t: t_max,
            h: h0,
            v: 0.0,
        });
        return Ok(Trajectory {
            samples,
            outcome: Outcome::AsymptoticRest { h_star: h0 },
        });
    }

    let h_contact = CONTACT_FRACTION * h0;
    let v_scale = v0.abs();
    // The invariant v + ∫^h F is what the first-integral check sees; an
    // error δh in the gap shows up there as F·δh.
    let time_rhs = |_t: f64, y: [f64; 2]| -> Result<Option<[f64; 2]>> {
        if !(y[0] > 0.0) {
            return Ok(None);
        }
        let f = checked_drag(drag, y[0])?;
        Ok(Some([y[1], -y[1] * f]))
    };
    let gap_rhs = |h: f64, y: [f64; 2]| -> Result<Option<[f64; 2]>> {
        if !(h > 0.0) || !(y[1] < 0.0) {
            return Ok(None);
        }
        let f = checked_drag(drag, h)?;
        Ok(Some([1.0 / y[1], -f]))
    };

    let (mut t, mut h, mut v) = (0.0, h0, v0);
    let f0 = checked_drag(drag, h0)?;
    let mut dt = 1e-3 * (h0 / v_scale).min(1.0 / f0.max(1e-300)).min(t_max);
    let mut dh = 0.0;
    let mut gap_mode = false;
    let mut gap_blocked = false;
    let mut ctl = Controller { prev: 1e-4 };

    for _ in 0..MAX_STEPS {
        if !gap_mode {
            let remaining = t_max - t;
            let limited = dt >= remaining;
            let step = dt.min(remaining);
            if !gap_blocked && !limited && v < 0.0 && v.abs() >= GAP_MODE_ENTER * v_scale {
                gap_mode = true;
                dh = -(0.5 * h).min(v.abs() * step);
                continue;
            }
            let f_here = checked_drag(drag, h)?;
            match dp_step(&time_rhs, t, [h, v], step)? {
                Some((y, err)) if y[0] > h_contact => {
                    let e = error_norm(err, [h, v], y, 1.0 + f_here, tol, v_scale);
                    if e <= 1.0 {
                        ctl.accept(e);
                        t += step;
                        h = y[0];
                        v = y[1];
                        samples.push(DynState { t, h, v });
                        if v.abs() < REST_FRACTION * v_scale {
                            return Ok(Trajectory {
                                samples,
                                outcome: Outcome::AsymptoticRest { h_star: h },
                            });
                        }
                        if t >= t_max {
                            return Ok(Trajectory {
                                samples,
                                outcome: Outcome::Truncated { t_max },
                            });
                        }
                        dt = step * ctl.factor(e);
                    } else {
                        dt = step * ctl.factor(e).min(1.0);
                    }
                }
                _ => dt = 0.25 * step,
            }
            if dt < 1e-15 * (1.0 + t) {
                return Err(Error::StepFailure { t, h });
            }
        } else {
            // Stretch onto the threshold rather than leave a sliver behind.
            let last = h - h_contact <= 1.1 * dh.abs();
            let step = if last { h_contact - h } else { dh };
            match dp_step(&gap_rhs, h, [t, v], step)? {
                Some((y, err)) => {
                    let e = error_norm(err, [t, v], y, 0.0, tol, v_scale);
                    if e <= 1.0 {
                        if y[0] > t_max {
                            gap_mode = false;
                            gap_blocked = true;
                            dt = (t_max - t).max(1e-15 * (1.0 + t));
                            continue;
                        }
                        ctl.accept(e);
                        h = if last { h_contact } else { h + step };
                        t = y[0];
                        v = y[1];
                        if last {
                            samples.push(DynState { t, h, v });
                            let outcome = below_threshold(drag, h_contact, t, v)?;
                            return Ok(Trajectory { samples, outcome });
                        }
                        samples.push(DynState { t, h, v });
                        if v.abs() < GAP_MODE_LEAVE * v_scale {
                            gap_mode = false;
                            dt = (0.1 * h / v.abs().max(1e-300)).min(t_max - t);
                            continue;
                        }
                        dh = step * ctl.factor(e);
                    } else {
                        dh = step * ctl.factor(e).min(1.0);
                    }
                }
                None => {
                    // v reached zero inside the step: the solid stops first.
                    if step.abs() < 1e-6 * h {
                        gap_mode = false;
                        dt = (0.1 * h / v.abs().max(1e-300)).min(t_max - t);
                        continue;
                    }
                    dh = 0.25 * step;
                }
            }
            if dh.abs() < 1e-15 * h_contact {
                return Err(Error::StepFailure { t, h });
            }
        }
    }
    Err(Error::StepFailure { t, h })
}

// Decides what happens below the contact threshold from the velocity–gap
// relation: contact if the remaining speed beats ∫₀^{h_c} F, otherwise rest
// at the root of v(h) = 0.
fn below_threshold<D: DragModel + ?Sized>(drag: &D, h_c: f64, t: f64, v: f64) -> Result<Outcome> {
    let cfg = QuadConfig::default();
    if collision_predicate(drag, h_c, v, &cfg)? {
        return Ok(Outcome::ContactAt { t, v });
    }
    let speed = v.abs();
    let (mut hi, mut lost) = (h_c, 0.0);
    let mut lo = h_c;
    while lo > f64::MIN_POSITIVE {
        lo = (0.1 * hi).max(f64::MIN_POSITIVE);
        let inc = integrate_drag(drag, lo, hi, &cfg)?;
        if lost + inc >= speed {
            break;
        }
        lost += inc;
        hi = lo;
    }
    if lo <= f64::MIN_POSITIVE {
        return Ok(Outcome::AsymptoticRest { h_star: lo });
    }
    // The root lies in the decade [lo, top]; bisect in log h.
    let (top, target) = (hi, speed - lost);
    for _ in 0..60 {
        let mid = (lo * hi).sqrt();
        if integrate_drag(drag, mid, top, &cfg)? >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Outcome::AsymptoticRest {
        h_star: (lo * hi).sqrt(),
    })
}

// ∫_a^b F over log-spaced panels (the drag varies on the scale of h itself).
fn integrate_drag<D: DragModel + ?Sized>(drag: &D, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = |h: f64| match drag.drag(h) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let pts = if b / a > 3.0 { log_breaks(a, b) } else { vec![a, b] };
    match quad::integrate_points(f, &pts, cfg) {
        Ok(r) => Ok(r.value),
        Err(Error::NonFinite { at }) => Err(failure.into_inner().unwrap_or(Error::NonFiniteDrag { h: at })),
        Err(e) => Err(e),
    }
}

/// `v(h) = v₀ + ∫_h^{h₀} F(s) ds`, the velocity at gap `h` on a trajectory
/// started from `(h₀, v₀)`. Physical only while the result stays negative.
pub fn velocity_gap<D: DragModel + ?Sized>(drag: &D, h0: f64, v0: f64, h: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(h > 0.0 && h <= h0) {
        return domain(format!("need 0 < h <= h0, got h = {h}, h0 = {h0}"));
    }
    let integral = integrate_drag(drag, h, h0, cfg)?;
    if !integral.is_finite() {
        return Err(Error::NonIntegrable { h });
    }
    Ok(v0 + integral)
}

/// Lower limits `h₀·10^{−k}` are tried up to this `k`.
pub const COLLISION_MAX_DECADES: usize = 16;

/// Whether a solid launched toward the wall from `(h₀, v₀)` reaches it in
/// finite time, i.e. whether `∫₀^{h₀} F` is finite and below `|v₀|`.
///
/// The integral is accumulated decade by decade toward `h = 0`. Once the
/// per-decade increments settle into a geometric sequence the tail is
/// summed in closed form; increments that stop shrinking signal divergence.
pub fn collision_predicate<D: DragModel + ?Sized>(drag: &D, h0: f64, v0: f64, cfg: &QuadConfig) -> Result<bool> {
    if !(h0 > 0.0 && h0.is_finite()) {
        return domain(format!("initial gap must be > 0, got {h0}"));
    }
    if !(v0 < 0.0) {
        return domain(format!("collision needs an approaching solid (v0 < 0), got {v0}"));
    }
    let speed = v0.abs();
    let mut upper = h0;
    let mut total = 0.0;
    let mut increments: Vec<f64> = Vec::new();
    for _ in 0..COLLISION_MAX_DECADES {
        let lower = 0.1 * upper;
        let inc = integrate_drag(drag, lower, upper, cfg)?;
        total += inc;
        if total >= speed {
            return Ok(false);
        }
        increments.push(inc);
        upper = lower;
        let m = increments.len();
        if m >= 4 {
            let r1 = increments[m - 1] / increments[m - 2];
            let r2 = increments[m - 2] / increments[m - 3];
            let settled = (r1 - r2).abs() <= 0.05 * r2.abs().max(1e-12);
            if settled && r1 >= 0.97 {
                return Ok(false);
            }
            if settled && r1 < 0.97 {
                let tail = inc * r1 / (1.0 - r1);
                return Ok(total + tail < speed);
            }
        }
    }
    Err(Error::Indeterminate(format!(
        "per-decade increments did not settle within {COLLISION_MAX_DECADES} decades (partial integral {total})"
    )))
}
