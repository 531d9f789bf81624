//! Discrete variational oracle for the per-radius profile problem.
//!
//! Minimizes
//!
//! ```text
//! E[Φ] = ∫₀¹ |Φ''|² dt + α_S |Φ'(1)|² + α_P |Φ'(0)|²,   Φ(0) = 0, Φ(1) = 1
//! ```
//!
//! (or the bending term alone with `Φ'(0) = Φ'(1) = 0` in the clamped,
//! no-slip case) over grid functions on a uniform grid of `n` points. The
//! grid carries one ghost node past each end so that `Φ''` is a central
//! second difference at every grid point and `Φ'` at the ends is a central
//! first difference; the bending integral is the trapezoidal sum of
//! `|Φ''|²`. The discrete energy is quadratic, so its minimizer solves a
//! pentadiagonal symmetric positive definite system, assembled here and
//! factored by band Cholesky.
//!
//! Nothing in this module uses the closed-form cubic minimizers; they are
//! only brought in by [`compare_to_closed_form`].

use serde::{Deserialize, Serialize};

use crate::banded::BandedSpd;
use crate::error::{domain, Result};
use crate::slip::{phi_coeffs, CubicMinimizer, RobinCoeffs};

pub const MIN_GRID_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryCondition {
    /// `Φ'(0) = Φ'(1) = 0`: no slip on either surface.
    Clamped,
    /// Natural conditions weighted by the slip coefficients.
    Robin { alpha_s: f64, alpha_p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileProblem {
    pub bc: BoundaryCondition,
    pub n: usize,
}

impl ProfileProblem {
    pub fn clamped(n: usize) -> Self {
        ProfileProblem {
            bc: BoundaryCondition::Clamped,
            n,
        }
    }

    pub fn robin(alpha_s: f64, alpha_p: f64, n: usize) -> Self {
        ProfileProblem {
            bc: BoundaryCondition::Robin { alpha_s, alpha_p },
            n,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < MIN_GRID_POINTS {
            return domain(format!("grid needs at least {MIN_GRID_POINTS} points, got {}", self.n));
        }
        if let BoundaryCondition::Robin { alpha_s, alpha_p } = self.bc {
            if !(alpha_s >= 0.0 && alpha_p >= 0.0 && alpha_s.is_finite() && alpha_p.is_finite()) {
                return domain(format!(
                    "Robin weights must be finite and >= 0, got ({alpha_s}, {alpha_p})"
                ));
            }
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        1.0 / (self.n - 1) as f64
    }

    /// Grid abscissae `t_k = k/(n−1)`.
    pub fn grid(&self) -> Vec<f64> {
        let m = (self.n - 1) as f64;
        (0..self.n).map(|k| k as f64 / m).collect()
    }

    fn weights(&self) -> (f64, f64) {
        match self.bc {
            BoundaryCondition::Clamped => (0.0, 0.0),
            BoundaryCondition::Robin { alpha_s, alpha_p } => (alpha_s, alpha_p),
        }
    }

    /// Discrete energy of a grid function given on the extended grid
    /// (ghost, `n` grid values, ghost). The Dirichlet data and, when
    /// clamped, the mirror conditions `Φ₋₁ = Φ₁`, `Φₙ = Φₙ₋₂` must hold.
    pub fn energy_of(&self, extended: &[f64]) -> Result<f64> {
        self.validate()?;
        let n = self.n;
        if extended.len() != n + 2 {
            return domain(format!("expected {} extended values, got {}", n + 2, extended.len()));
        }
        if extended[1] != 0.0 || extended[n] != 1.0 {
            return domain("grid function must satisfy Φ(0) = 0 and Φ(1) = 1");
        }
        if self.bc == BoundaryCondition::Clamped && (extended[0] != extended[2] || extended[n + 1] != extended[n - 1]) {
            return domain("clamped grid function must mirror across both ends");
        }
        Ok(discrete_energy(extended, self.step(), self.weights()))
    }

    /// Samples `f` on the extended grid, enforcing the clamped mirror
    /// conditions when they apply.
    pub fn sample_extended<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        let h = self.step();
        let n = self.n;
        let mut ext = Vec::with_capacity(n + 2);
        ext.push(f(-h));
        ext.extend(self.grid().into_iter().map(&f));
        ext.push(f(1.0 + h));
        ext[1] = 0.0;
        ext[n] = 1.0;
        if self.bc == BoundaryCondition::Clamped {
            ext[0] = ext[2];
            ext[n + 1] = ext[n - 1];
        }
        ext
    }
}

fn second_difference(ext: &[f64], k: usize, h: f64) -> f64 {
    (ext[k] - 2.0 * ext[k + 1] + ext[k + 2]) / (h * h)
}

fn discrete_energy(ext: &[f64], h: f64, (alpha_s, alpha_p): (f64, f64)) -> f64 {
    let n = ext.len() - 2;
    let mut bending = 0.0;
    for k in 0..n {
        let w = if k == 0 || k == n - 1 { 0.5 * h } else { h };
        bending += w * second_difference(ext, k, h).powi(2);
    }
    let d_left = (ext[2] - ext[0]) / (2.0 * h);
    let d_right = (ext[n + 1] - ext[n - 1]) / (2.0 * h);
    bending + alpha_s * d_right * d_right + alpha_p * d_left * d_left
}

/// Minimizer of the discrete energy.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    /// `Φ` at the `n` grid points; first is 0 and last is 1.
    pub values: Vec<f64>,
    pub energy: f64,
    pub n: usize,
    ghosts: (f64, f64),
}

impl OracleSolution {
    pub fn extended(&self) -> Vec<f64> {
        let mut ext = Vec::with_capacity(self.n + 2);
        ext.push(self.ghosts.0);
        ext.extend_from_slice(&self.values);
        ext.push(self.ghosts.1);
        ext
    }

    fn step(&self) -> f64 {
        1.0 / (self.n - 1) as f64
    }

    /// Discrete `(Φ'(0), Φ'(1))`.
    pub fn boundary_slopes(&self) -> (f64, f64) {
        let ext = self.extended();
        let h = self.step();
        let n = self.n;
        ((ext[2] - ext[0]) / (2.0 * h), (ext[n + 1] - ext[n - 1]) / (2.0 * h))
    }

    /// Discrete `(Φ''(0), Φ''(1))`.
    pub fn boundary_curvatures(&self) -> (f64, f64) {
        let ext = self.extended();
        let h = self.step();
        (second_difference(&ext, 0, h), second_difference(&ext, self.n - 1, h))
    }
}

// Position of extended-grid index `e` among the unknowns, or None when the
// value there is fixed. Clamped ghosts alias their mirror node.
fn unknown_index(bc: BoundaryCondition, n: usize, e: usize) -> Option<usize> {
    let last = n + 1;
    match bc {
        BoundaryCondition::Robin { .. } => match e {
            0 => Some(0),
            1 => None,
            e if e == n => None,
            e if e == last => Some(n - 1),
            e => Some(e - 1),
        },
        BoundaryCondition::Clamped => match e {
            0 => Some(0),
            1 => None,
            e if e == n => None,
            e if e == last => Some(n - 3),
            e => Some(e - 2),
        },
    }
}

// Lifting that carries the inhomogeneous data, with its stencil values in
// closed form so the right-hand side is free of cancellation: returns the
// extended samples, the second differences at the n grid points and the two
// end slopes.
fn lifting(p: &ProfileProblem) -> (Vec<f64>, Vec<f64>, (f64, f64)) {
    let n = p.n;
    let h = p.step();
    let mut ext = Vec::with_capacity(n + 2);
    ext.push(-h);
    ext.extend(p.grid());
    ext.push(1.0 + h);
    let mut curv = vec![0.0; n];
    let slopes = match p.bc {
        BoundaryCondition::Robin { .. } => (1.0, 1.0),
        BoundaryCondition::Clamped => {
            ext[0] = ext[2];
            ext[n + 1] = ext[n - 1];
            curv[0] = 2.0 / h;
            curv[n - 1] = -2.0 / h;
            (0.0, 0.0)
        }
    };
    (ext, curv, slopes)
}

/// Exact minimizer of the discrete energy.
pub fn minimize_profile(p: &ProfileProblem) -> Result<OracleSolution> {
    p.validate()?;
    let n = p.n;
    let h = p.step();
    let (alpha_s, alpha_p) = p.weights();
    let dim = match p.bc {
        BoundaryCondition::Robin { .. } => n,
        BoundaryCondition::Clamped => n - 2,
    };

    let (lift, lift_curv, lift_slopes) = lifting(p);
    let mut k = BandedSpd::zeros(dim, 2);
    let mut rhs = vec![0.0; dim];

    // Adds w·(a·x + s)² to the energy, with a given on extended indices.
    let mut add_term = |taps: &[(usize, f64)], offset: f64, w: f64| {
        let mut row: Vec<(usize, f64)> = Vec::with_capacity(3);
        for &(e, c) in taps {
            if let Some(j) = unknown_index(p.bc, n, e) {
                match row.iter_mut().find(|(i, _)| *i == j) {
                    Some(slot) => slot.1 += c,
                    None => row.push((j, c)),
                }
            }
        }
        for &(i, ai) in &row {
            rhs[i] -= w * offset * ai;
            for &(j, aj) in &row {
                if j <= i {
                    k.add(i, j, w * ai * aj);
                }
            }
        }
    };

    let inv_h2 = 1.0 / (h * h);
    for (node, &curv) in lift_curv.iter().enumerate().take(n) {
        let w = if node == 0 || node == n - 1 { 0.5 * h } else { h };
        let taps = [(node, inv_h2), (node + 1, -2.0 * inv_h2), (node + 2, inv_h2)];
        add_term(&taps, curv, w);
    }
    let inv_2h = 0.5 / h;
    if alpha_p > 0.0 {
        add_term(&[(2, inv_2h), (0, -inv_2h)], lift_slopes.0, alpha_p);
    }
    if alpha_s > 0.0 {
        add_term(&[(n + 1, inv_2h), (n - 1, -inv_2h)], lift_slopes.1, alpha_s);
    }

    let x = k.cholesky()?.solve(&rhs);
    let mut ext = lift;
    for (e, v) in ext.iter_mut().enumerate() {
        if let Some(j) = unknown_index(p.bc, n, e) {
            *v += x[j];
        }
    }
    let energy = discrete_energy(&ext, h, (alpha_s, alpha_p));
    Ok(OracleSolution {
        values: ext[1..=n].to_vec(),
        energy,
        n,
        ghosts: (ext[0], ext[n + 1]),
    })
}

/// Continuum minimizer in closed form: `3t² − 2t³` when clamped, the Robin
/// cubic otherwise.
pub fn closed_form(bc: BoundaryCondition) -> CubicMinimizer {
    match bc {
        BoundaryCondition::Clamped => CubicMinimizer {
            c3: -2.0,
            c2: 3.0,
            c1: 0.0,
        },
        BoundaryCondition::Robin { alpha_s, alpha_p } => phi_coeffs(&RobinCoeffs { alpha_s, alpha_p }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    /// `max_k |Φ_oracle(t_k) − Φ_closed(t_k)|`.
    pub max_abs_gap: f64,
    /// Discrete energy of the sampled closed-form cubic minus the oracle
    /// energy; nonnegative up to round-off.
    pub energy_gap: f64,
    pub oracle_energy: f64,
    /// Continuum energy of the closed-form minimizer.
    pub closed_form_energy: f64,
}

impl ClosedFormReport {
    /// Oracle energy minus continuum minimum.
    pub fn continuum_gap(&self) -> f64 {
        self.oracle_energy - self.closed_form_energy
    }
}

pub fn compare_to_closed_form(p: &ProfileProblem) -> Result<ClosedFormReport> {
    let sol = minimize_profile(p)?;
    let cubic = closed_form(p.bc);
    let max_abs_gap = p
        .grid()
        .iter()
        .zip(&sol.values)
        .map(|(&t, &v)| (cubic.eval(t) - v).abs())
        .fold(0.0, f64::max);
    let sampled = p.sample_extended(|t| cubic.eval(t));
    let energy_gap = p.energy_of(&sampled)? - sol.energy;
    let rc = match p.bc {
        BoundaryCondition::Clamped => RobinCoeffs {
            alpha_s: 0.0,
            alpha_p: 0.0,
        },
        BoundaryCondition::Robin { alpha_s, alpha_p } => RobinCoeffs { alpha_s, alpha_p },
    };
    Ok(ClosedFormReport {
        max_abs_gap,
        energy_gap,
        oracle_energy: sol.energy,
        closed_form_energy: cubic.energy(&rc),
    })
}
