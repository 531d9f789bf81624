use std::f64::consts::PI;

use lubridrag::noslip::{cal_i, drag_integral, lambda_alpha, mu_alpha};
use lubridrag::{GapProfile, QuadConfig};
use proptest::prelude::*;

fn drag(eps: f64, alpha: f64, h: f64) -> f64 {
    drag_integral(&GapProfile::rough(eps, alpha).unwrap(), h, &QuadConfig::default())
        .unwrap()
        .value
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strictly_decreasing_in_h(eps in 0.0f64..0.3, alpha in 0.0f64..0.95) {
        let values: Vec<f64> = log_grid(1e-7, 0.5, 10).into_iter().map(|h| drag(eps, alpha, h)).collect();
        prop_assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    }

    #[test]
    fn nonincreasing_in_eps(h in 1e-7f64..0.1, alpha in 0.0f64..0.95) {
        let values: Vec<f64> = [0.0, 1e-3, 1e-2, 0.05, 0.1, 0.3].iter().map(|&e| drag(e, alpha, h)).collect();
        prop_assert!(values.windows(2).all(|w| w[1] <= w[0]), "{values:?}");
    }

    #[test]
    fn small_beta_consistency(alpha in 0.0f64..0.9, h in 1e-6f64..1e-3, beta in 1e-4f64..1e-2) {
        let eps = beta * h.powf(0.5 * (1.0 - alpha));
        let shift = lambda_alpha(alpha).unwrap() * eps * h.powf(0.5 * (alpha + 1.0));
        let r = drag(eps, alpha, h) * (h + shift) / (6.0 * PI);
        prop_assert!((r - 1.0).abs() <= 0.05, "{r}");
    }

    #[test]
    fn large_beta_consistency_lipschitz(eps in 0.01f64..0.1, beta in 100.0f64..1e4) {
        let h = (eps / beta).powi(2);
        let r = drag(eps, 0.0, h) * eps * eps / (6.0 * PI);
        prop_assert!((r - 1.0).abs() <= 0.10, "eps={eps} h={h:e}: {r}");
    }
}

#[test]
fn large_beta_trend_above_one_third() {
    let cfg = QuadConfig::with_tol(1e-12);
    for alpha in [0.4, 0.5, 0.7, 0.9] {
        let mu = mu_alpha(alpha, &cfg).unwrap();
        let devs: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&b: &f64| (cal_i(b, alpha, &cfg).unwrap().value * b.powf(4.0 / (1.0 + alpha)) / mu - 1.0).abs())
            .collect();
        assert!(devs[1] < devs[0] && devs[2] < devs[1], "alpha={alpha}: {devs:?}");
    }
}

#[test]
fn log_law_at_one_third() {
    let b: f64 = 1e4;
    let v = cal_i(b, 1.0 / 3.0, &QuadConfig::with_tol(1e-12)).unwrap().value * b.powi(3) / b.ln();
    assert!((v / 2.25 - 1.0).abs() <= 0.15, "{v}");
}

// Drag stays below C·h^(−γ) with γ = max((3α−1)/(α+1), 0) < 1 once roughness
// dominates. ε is chosen so that β ≥ 20 across the fitted range.
#[test]
fn collision_resolution_slope() {
    for alpha in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.7, 0.9] {
        let eps = 20.0 * 1e-5f64.powf(0.5 * (1.0 - alpha));
        let hs = log_grid(1e-9, 1e-5, 9);
        let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
        let ys: Vec<f64> = hs.iter().map(|&h| drag(eps, alpha, h).ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / 9.0, ys.iter().sum::<f64>() / 9.0);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let slope = sxy / sxx;
        let gamma = ((3.0 * alpha - 1.0) / (alpha + 1.0)).max(0.0);
        assert!(-slope < 1.0, "alpha={alpha}: slope {slope}");
        // At α = 1/3 the drag grows like |ln h|, whose local slope −1/|ln h|
        // is bounded by any positive power.
        let allowance = if (alpha - 1.0f64 / 3.0).abs() < 1e-12 {
            0.15
        } else {
            0.1
        };
        assert!(
            -slope <= gamma + allowance,
            "alpha={alpha}: slope {slope}, gamma {gamma}"
        );
    }
}
