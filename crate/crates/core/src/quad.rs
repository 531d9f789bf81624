//! Adaptive Gauss–Kronrod quadrature.
//!
//! Every panel is integrated with the 15-point Kronrod rule and its embedded
//! 7-point Gauss rule; their difference (rescaled as in QUADPACK) is the
//! panel error. The panel with the largest error is bisected until the
//! summed error meets the tolerance. Final sums run over panels in order of
//! their left endpoint, so the result does not depend on the refinement
//! history.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

// Kronrod abscissae (nonnegative half) and weights; odd indices are the
// 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig {
            abs_tol: tol,
            rel_tol: tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) || self.max_subdivisions == 0 {
            return domain(format!("invalid quadrature config {self:?}"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = eval(f, center - x)?;
        let f2 = eval(f, center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs, res_asc);
    Ok(Panel { a, b, value, err })
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_points(f, &[a, b], cfg)
}

/// Integrates `f` over `[pts[0], pts[last]]`, seeding the adaptive scheme
/// with one panel per consecutive pair of break points. Break points let
/// callers place panel edges at known features (peaks, kinks, scales).
pub fn integrate_points<F: Fn(f64) -> f64>(f: F, pts: &[f64], cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if pts.len() < 2 {
        return domain("need at least two integration limits");
    }
    if pts.iter().any(|p| !p.is_finite()) || pts.windows(2).any(|w| !(w[0] < w[1])) {
        return domain(format!("integration limits must be finite and increasing: {pts:?}"));
    }

    let mut heap = BinaryHeap::with_capacity(pts.len() + 2 * cfg.max_subdivisions);
    let mut done: Vec<Panel> = Vec::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in pts.windows(2) {
        let p = kronrod15(&f, w[0], w[1])?;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    let mut n_evals = 15 * (pts.len() - 1);
    let mut subdivisions = 0;

    while total_err > cfg.target(total) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        // Panel too narrow to split in floating point: freeze it.
        if !(worst.a < mid && mid < worst.b) || (worst.b - worst.a) < 4.0 * f64::EPSILON * mid.abs() {
            done.push(worst);
            continue;
        }
        if subdivisions >= cfg.max_subdivisions {
            heap.push(worst);
            break;
        }
        let left = kronrod15(&f, worst.a, mid)?;
        let right = kronrod15(&f, mid, worst.b)?;
        n_evals += 30;
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    done.extend(heap);
    done.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = done.iter().map(|p| p.value).sum();
    let err_estimate: f64 = done.iter().map(|p| p.err).sum();
    if err_estimate > cfg.target(value) {
        return Err(Error::NonConvergence {
            subdivisions,
            value,
            err_estimate,
        });
    }
    Ok(QuadResult {
        value,
        err_estimate,
        n_evals,
    })
}

/// Integrates `f` over `[a, ∞)` through the substitution `s = a + t/(1 − t)`.
/// The caller guarantees decay at least like `s⁻²`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_semi_infinite_points(f, a, &[], cfg)
}

/// As [`integrate_semi_infinite`], with extra break points `s > a` mapped
/// into the compactified variable.
pub fn integrate_semi_infinite_points<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    if !a.is_finite() {
        return domain("lower limit must be finite");
    }
    let mut ts = vec![0.0];
    for &s in breaks {
        if !(s > a && s.is_finite()) {
            return domain(format!("break point {s} must be finite and > {a}"));
        }
        let t = (s - a) / (1.0 + (s - a));
        // Breaks beyond ~1/ε collapse onto t = 1.
        if t < 1.0 {
            ts.push(t);
        }
    }
    ts.push(1.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let g = |t: f64| {
        let u = (1.0 - t).max(f64::EPSILON);
        f(a + t / u) / (u * u)
    };
    integrate_points(g, &ts, cfg)
}
