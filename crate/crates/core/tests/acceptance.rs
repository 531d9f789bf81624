//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::f64::consts::PI;
use std::time::Instant;

use lubridrag::cli;
use lubridrag::corrugated::{self, CorrugationData};
use lubridrag::dynamics::{self, NoSlipDrag, Outcome, Trajectory};
use lubridrag::noslip::{self, cal_i, lambda_alpha, mu_alpha};
use lubridrag::oracle1d::{self, ProfileProblem};
use lubridrag::quad::{self, QuadConfig};
use lubridrag::slip::{self, SlipParams};
use lubridrag::GapProfile;
use serde_json::Value;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

type Outcome_ = Result<Verdict, String>;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_base_integral() -> Outcome_ {
    let mut worst: f64 = 0.0;
    for alpha in [0.0, 0.25, 1.0 / 3.0, 0.5, 0.9] {
        let v = cal_i(0.0, alpha, &cfg()).map_err(err)?.value;
        worst = worst.max((v - 1.0).abs());
    }
    Ok(verdict(
        worst <= 1e-9,
        format!("max |I(0) - 1| = {worst:.2e} (<= 1e-9)"),
    ))
}

fn c2_lambda() -> Outcome_ {
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let alpha = k as f64 / 10.0;
        let q = quad::integrate_semi_infinite(
            |s| 3.0 * s.powf(4.0 + alpha) * (1.0 + 0.5 * s * s).powi(-4),
            0.0,
            &QuadConfig::with_tol(1e-13),
        )
        .map_err(err)?
        .value;
        worst = worst.max((lambda_alpha(alpha).map_err(err)? / q - 1.0).abs());
    }
    let l0 = (lambda_alpha(0.0).map_err(err)? - 3.0 * 2f64.sqrt() * PI / 8.0).abs();
    Ok(verdict(
        worst <= 1e-8 && l0 <= 1e-12,
        format!("max relative gap {worst:.2e} (<= 1e-8); |lambda_0 - 3 sqrt2 pi/8| = {l0:.1e} (<= 1e-12)"),
    ))
}

fn c3_small_beta() -> Outcome_ {
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in [0.0, 0.5] {
        let lam = lambda_alpha(alpha).map_err(err)?;
        let mut ratios = Vec::new();
        for beta in [1e-1, 1e-2, 1e-3] {
            let v = cal_i(beta, alpha, &QuadConfig::with_tol(1e-13)).map_err(err)?.value;
            let r = (v - 1.0 / (1.0 + lam * beta)).abs() / (beta * beta);
            ok &= r <= 2.0;
            ratios.push(r);
        }
        // O(β²): the scaled remainder settles rather than growing.
        ok &= ratios[2] <= 1.5 * ratios[1] && ratios[1] <= 1.5 * ratios[0];
        notes.push(format!(
            "alpha={alpha}: |rem|/beta^2 = {:.3}, {:.3}, {:.3}",
            ratios[0], ratios[1], ratios[2]
        ));
    }
    Ok(verdict(
        ok,
        format!("{} (<= 2, bounded growth per decade)", notes.join("; ")),
    ))
}

fn c4_large_beta() -> Outcome_ {
    let c = QuadConfig::with_tol(1e-12);
    let a0 = cal_i(1e3, 0.0, &c).map_err(err)?.value * 1e6;
    let mu = mu_alpha(0.5, &c).map_err(err)?;
    let a5 = cal_i(1e3, 0.5, &c).map_err(err)?.value * 1e3f64.powf(8.0 / 3.0) / mu;
    let a3 = cal_i(1e4, 1.0 / 3.0, &c).map_err(err)?.value * 1e12 / 1e4f64.ln();
    let pass = (a0 - 1.0).abs() <= 0.05 && (a5 - 1.0).abs() <= 0.05 && (a3 / 2.25 - 1.0).abs() <= 0.15;
    Ok(verdict(
        pass,
        format!("alpha=0: {a0:.4} (1 +- 5%); alpha=0.5: {a5:.4} of mu (1 +- 5%); alpha=1/3: {a3:.4} (9/4 +- 15%)"),
    ))
}

fn c5_smooth() -> Outcome_ {
    let h = 1e-5;
    let v = noslip::drag_integral(&GapProfile::smooth(), h, &cfg())
        .map_err(err)?
        .value;
    let r = v * h / (6.0 * PI);
    Ok(verdict(
        (r - 1.0).abs() <= 1e-3,
        format!("drag*h/(6pi) = {r:.6} (1 +- 1e-3)"),
    ))
}

fn c6_regime_matching() -> Outcome_ {
    let big = {
        let p = GapProfile::rough(0.1, 0.0).map_err(err)?;
        let e = noslip::drag_integral(&p, 1e-6, &cfg()).map_err(err)?.value;
        let a = noslip::asym_drag(1e-6, 0.1, 0.0).map_err(err)?;
        (e / a.value - 1.0, a.regime.map(|r| r.beta).unwrap_or(f64::NAN))
    };
    let small = {
        let p = GapProfile::rough(1e-4, 0.0).map_err(err)?;
        let e = noslip::drag_integral(&p, 1e-4, &cfg()).map_err(err)?.value;
        let a = noslip::asym_drag(1e-4, 1e-4, 0.0).map_err(err)?;
        (e / a.value - 1.0, a.regime.map(|r| r.beta).unwrap_or(f64::NAN))
    };
    Ok(verdict(
        big.0.abs() <= 0.10 && small.0.abs() <= 0.05,
        format!(
            "beta={:.0}: rel gap {:+.4} (<= 10%); beta={:.0e}: rel gap {:+.4} (<= 5%)",
            big.1, big.0, small.1, small.0
        ),
    ))
}

fn c7_oracle_energy() -> Outcome_ {
    let bound = 5.0 / (200.0f64 * 200.0);
    let mut pass = true;
    let mut notes = Vec::new();
    for (a_s, a_p) in [(0.0, 0.0), (1.0, 2.0), (10.0, 10.0), (1e4, 1e4)] {
        let r200 = oracle1d::compare_to_closed_form(&ProfileProblem::robin(a_s, a_p, 200)).map_err(err)?;
        let r100 = oracle1d::compare_to_closed_form(&ProfileProblem::robin(a_s, a_p, 100)).map_err(err)?;
        let i12 = slip::integrand_i1(&slip::RobinCoeffs {
            alpha_s: a_s,
            alpha_p: a_p,
        }) + slip::integrand_i2(&slip::RobinCoeffs {
            alpha_s: a_s,
            alpha_p: a_p,
        });
        let gap = r200.oracle_energy - i12;
        let energy_ok = gap.abs() <= bound;
        let order = if r100.max_abs_gap > 1e-13 {
            Some((r100.max_abs_gap / r200.max_abs_gap).log2())
        } else {
            None
        };
        let order_ok = order.is_none_or(|p| (p - 2.0).abs() <= 0.3);
        pass &= energy_ok && order_ok;
        notes.push(format!(
            "({a_s:e},{a_p:e}): gap {gap:.2e}{} order {}",
            if energy_ok { "" } else { " FAIL" },
            order.map_or("exact".to_string(), |p| format!("{p:.2}"))
        ));
    }
    Ok(verdict(
        pass,
        format!("{}; |gap| <= {bound:.2e}, order 2 +- 0.3", notes.join("; ")),
    ))
}

fn c8_clamped() -> Outcome_ {
    let sol = oracle1d::minimize_profile(&ProfileProblem::clamped(200)).map_err(err)?;
    Ok(verdict(
        (sol.energy - 12.0).abs() <= 0.01,
        format!("energy {:.6} (12 +- 0.01)", sol.energy),
    ))
}

fn c9_hocking() -> Outcome_ {
    let sp = SlipParams::new(0.01, 0.01).map_err(err)?;
    let mut devs = Vec::new();
    for h in [1e-5, 1e-6, 1e-7, 1e-8] {
        let exact = slip::drag_integral_slip(&GapProfile::smooth(), h, &sp, &cfg())
            .map_err(err)?
            .value;
        devs.push(exact / (PI * 200.0 * h.ln().abs()));
    }
    let monotone = devs.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs());
    let last = devs[3];
    Ok(verdict(
        (last - 1.0).abs() <= 0.10 && monotone,
        format!(
            "ratios {:.4}, {:.4}, {:.4}, {:.4}; at 1e-8 need 1 +- 10%; monotone: {monotone}",
            devs[0], devs[1], devs[2], devs[3]
        ),
    ))
}

fn c10_noslip_limit() -> Outcome_ {
    let h = 0.01;
    let sp = SlipParams::new(1e-8, 1e-8).map_err(err)?;
    let v = slip::drag_integral_slip(&GapProfile::smooth(), h, &sp, &cfg())
        .map_err(err)?
        .value;
    let r = v * h / (6.0 * PI);
    Ok(verdict(
        (r - 1.0).abs() <= 0.01,
        format!("drag*h/(6pi) = {r:.5} (1 +- 1%)"),
    ))
}

fn c11_corrugated_ordering() -> Outcome_ {
    let mut count = 0;
    let mut violations = 0;
    for &h in &[1e-6, 1e-3, 0.1, 1.0, 10.0] {
        for &eps in &[1e-3, 0.1] {
            for &lambda in &[0.1, 1.0] {
                for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    let beta = frac * lambda;
                    let cd = CorrugationData::new(eps, lambda).map_err(err)?;
                    let (lo, up) = corrugated::drag_bounds(h, &cd).map_err(err)?;
                    let mid = corrugated::shifted_wall_drag(h, eps, beta).map_err(err)?;
                    if !(lo.value <= mid.value && mid.value <= up.value) {
                        violations += 1;
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(verdict(
        violations == 0 && count == 100,
        format!("{violations} violations over {count} points"),
    ))
}

fn rough_drag() -> Result<NoSlipDrag, String> {
    Ok(NoSlipDrag {
        profile: GapProfile::rough(0.1, 0.0).map_err(err)?,
        cfg: cfg(),
    })
}

const SIM_TOL: f64 = 1e-8;
const ROUGH_H0: f64 = 0.01;

struct Runs {
    smooth: Trajectory,
    rough: Trajectory,
    rough_v0: f64,
}

fn smooth_drag(h: f64) -> f64 {
    6.0 * PI / h
}

fn run_dynamics() -> Result<Runs, String> {
    let smooth = dynamics::simulate(&smooth_drag, 0.1, -1.0, 10.0, SIM_TOL).map_err(err)?;
    let drag = rough_drag()?;
    let h_contact = dynamics::CONTACT_FRACTION * ROUGH_H0;
    // Threshold speed: the whole velocity loss down to contact.
    let threshold = dynamics::velocity_gap(&drag, ROUGH_H0, 0.0, h_contact, &cfg()).map_err(err)?;
    let rough_v0 = -2.0 * threshold;
    let rough = dynamics::simulate(&drag, ROUGH_H0, rough_v0, 10.0, SIM_TOL).map_err(err)?;
    Ok(Runs {
        smooth,
        rough,
        rough_v0,
    })
}

fn c12_dichotomy(runs: &Runs) -> Outcome_ {
    let h_star = match runs.smooth.outcome {
        Outcome::AsymptoticRest { h_star } => h_star,
        other => return Ok(verdict(false, format!("smooth run ended with {other:?}"))),
    };
    let smooth_ok = (h_star - 0.0948335).abs() <= 1e-4;
    let (t_c, v_c) = match runs.rough.outcome {
        Outcome::ContactAt { t, v } => (t, v),
        other => return Ok(verdict(false, format!("rough run ended with {other:?}"))),
    };
    let drag = rough_drag()?;
    let h_contact = dynamics::CONTACT_FRACTION * ROUGH_H0;
    // Contact time from the velocity–gap relation: t = ∫ dh / |v(h)|.
    let loose = QuadConfig::with_tol(1e-8);
    let t_ref = quad::integrate_points(
        |h| {
            let v = dynamics::velocity_gap(&drag, ROUGH_H0, runs.rough_v0, h, &loose).unwrap_or(f64::NAN);
            1.0 / v.abs()
        },
        &noslip::log_breaks(h_contact, ROUGH_H0),
        &QuadConfig::with_tol(1e-7),
    )
    .map_err(err)?
    .value;
    let v_ref = dynamics::velocity_gap(&drag, ROUGH_H0, runs.rough_v0, h_contact, &cfg()).map_err(err)?;
    let t_gap = (t_c / t_ref - 1.0).abs();
    let v_gap = (v_c / v_ref - 1.0).abs();
    Ok(verdict(
        smooth_ok && t_gap <= 0.01 && v_gap <= 0.01,
        format!(
            "6pi/h: rest at {h_star:.7} (0.0948335 +- 1e-4); rough v0={:.3}: contact t={t_c:.6e} vs {t_ref:.6e} ({:.1e}), v={v_c:.4} vs {v_ref:.4} ({:.1e}) (<= 1%)",
            runs.rough_v0, t_gap, v_gap
        ),
    ))
}

fn c13_first_integral(runs: &Runs) -> Outcome_ {
    let drag = rough_drag()?;
    let tight = QuadConfig::with_tol(1e-12);
    let mut worst: f64 = 0.0;
    for s in runs.smooth.samples.iter().skip(1) {
        let v = -1.0 + 6.0 * PI * (0.1 / s.h).ln();
        worst = worst.max((s.v - v).abs());
    }
    let mut worst_rough: f64 = 0.0;
    for s in runs.rough.samples.iter().skip(1) {
        let v = dynamics::velocity_gap(&drag, ROUGH_H0, runs.rough_v0, s.h, &tight).map_err(err)?;
        worst_rough = worst_rough.max((s.v - v).abs());
    }
    let bound = 10.0 * SIM_TOL;
    Ok(verdict(
        worst <= bound && worst_rough <= bound,
        format!(
            "max |v - v(h)|: smooth {worst:.2e} over {} steps, rough {worst_rough:.2e} over {} steps (<= {bound:.0e})",
            runs.smooth.samples.len() - 1,
            runs.rough.samples.len() - 1
        ),
    ))
}

fn run_cli(argv: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let code = cli::run(
        std::iter::once("lubridrag").chain(argv.iter().copied()),
        &mut out,
        &mut errs,
    );
    (code, out, errs)
}

fn c14_cli() -> Outcome_ {
    let sweep = [
        "sweep",
        "--model",
        "noslip",
        "--grid",
        "h=1e-6:1e-1:6:log",
        "--grid",
        "eps=0:0.1:3",
        "--grid",
        "alpha=0:0.5:2",
    ];
    let mut outputs = Vec::new();
    for threads in ["1", "8", "1", "8"] {
        let mut argv = sweep.to_vec();
        argv.extend(["--threads", threads]);
        let (code, out, e) = run_cli(&argv);
        if code != 0 {
            return Ok(verdict(
                false,
                format!("sweep exit {code}: {}", String::from_utf8_lossy(&e)),
            ));
        }
        outputs.push(out);
    }
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    let lines = String::from_utf8_lossy(&outputs[0]).lines().count();

    let json_runs: Vec<Vec<&str>> = vec![
        vec!["drag", "--model", "noslip", "--h", "1e-4"],
        vec![
            "drag", "--model", "slip", "--h", "1e-3", "--beta-s", "0.1", "--beta-p", "0.2",
        ],
        vec![
            "drag",
            "--model",
            "corrugated",
            "--h",
            "0.01",
            "--eps",
            "0.1",
            "--lambda",
            "0.5",
            "--beta-eff",
            "0.2",
        ],
        vec![
            "asym", "--model", "noslip", "--h", "1e-6", "--eps", "0.1", "--alpha", "0",
        ],
        vec![
            "asym", "--model", "slip", "--h", "1e-6", "--beta-s", "0.01", "--beta-p", "0.01",
        ],
        vec![
            "asym",
            "--model",
            "corrugated",
            "--h",
            "0.01",
            "--eps",
            "0.1",
            "--beta-eff",
            "0.2",
        ],
        vec![
            "sweep",
            "--model",
            "slip",
            "--grid",
            "h=1e-4:1e-2:3:log",
            "--beta-s",
            "0.1",
            "--beta-p",
            "0.1",
            "--format",
            "json",
        ],
        vec![
            "sweep",
            "--model",
            "corrugated",
            "--grid",
            "h=0.01:1:3",
            "--eps",
            "0.1",
            "--lambda",
            "1",
            "--format",
            "json",
        ],
        vec!["oracle", "--model", "noslip"],
        vec![
            "oracle", "--model", "slip", "--h", "0.1", "--beta-s", "0.01", "--beta-p", "0.05", "--n", "100",
        ],
        vec!["simulate", "--h0", "0.1", "--v0", "-1", "--format", "json"],
        vec!["constants", "--alpha", "0"],
        vec!["constants"],
    ];
    let mut schema_failures = Vec::new();
    for argv in &json_runs {
        let (code, out, e) = run_cli(argv);
        let text = if code == 0 { out } else { e };
        let ok = serde_json::from_slice::<Value>(&text)
            .map_err(err)
            .and_then(|v| cli::schema::validate(&v));
        if code != 0 || ok.is_err() {
            schema_failures.push(format!("{}: exit {code} {:?}", argv.join(" "), ok.err()));
        }
    }
    let (code, _, e) = run_cli(&["drag", "--h", "1e-3", "--tol", "1e-300"]);
    if code == 1 {
        let ok = serde_json::from_slice::<Value>(&e)
            .map_err(err)
            .and_then(|v| cli::schema::validate(&v));
        if ok.is_err() {
            schema_failures.push(format!("error payload: {:?}", ok.err()));
        }
    }
    Ok(verdict(
        identical && lines == 37 && schema_failures.is_empty(),
        format!(
            "sweep --threads 1/8 byte-identical: {identical} ({lines} lines = 36 rows + header); {} JSON outputs valid{}",
            json_runs.len() - schema_failures.len(),
            if schema_failures.is_empty() {
                String::new()
            } else {
                format!("; invalid: {}", schema_failures.join(" | "))
            }
        ),
    ))
}

fn report(id: usize, name: &str, f: impl FnOnce() -> Outcome_) -> bool {
    let start = Instant::now();
    let result = f();
    let secs = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok(v) => (v.pass, v.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "[{}] {id:>2} {name}: {detail} [{secs:.2}s]",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn main() {
    let mut results = vec![
        report(1, "base integral I(0) = 1", c1_base_integral),
        report(2, "lambda_alpha closed form", c2_lambda),
        report(3, "small-beta expansion", c3_small_beta),
        report(4, "large-beta power laws", c4_large_beta),
        report(5, "smooth no-slip drag", c5_smooth),
        report(6, "rough drag regime matching", c6_regime_matching),
        report(7, "slip energy certified by oracle", c7_oracle_energy),
        report(8, "clamped minimizer energy", c8_clamped),
        report(9, "Hocking law", c9_hocking),
        report(10, "no-slip limit of slip model", c10_noslip_limit),
        report(11, "corrugated ordering", c11_corrugated_ordering),
    ];
    let start = Instant::now();
    let runs = run_dynamics();
    let setup = start.elapsed().as_secs_f64();
    match &runs {
        Ok(r) => {
            results.push(report(12, "dynamics dichotomy", || c12_dichotomy(r)));
            results.push(report(13, "first integral along trajectories", || {
                c13_first_integral(r)
            }));
        }
        Err(e) => {
            println!("[FAIL] 12 dynamics dichotomy: simulation failed: {e} [{setup:.2}s]");
            println!("[FAIL] 13 first integral along trajectories: simulation failed [{setup:.2}s]");
            results.extend([false, false]);
        }
    }
    results.push(report(14, "CLI determinism and schema", c14_cli));
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
