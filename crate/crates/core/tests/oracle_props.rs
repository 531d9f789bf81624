use std::f64::consts::PI;

use lubridrag::oracle1d::{compare_to_closed_form, minimize_profile, BoundaryCondition, ProfileProblem};
use lubridrag::slip::{integrand_i1, integrand_i2, RobinCoeffs};
use proptest::prelude::*;

fn perturbed(p: &ProfileProblem, base: &[f64], noise: &[f64]) -> Vec<f64> {
    let n = p.n;
    let mut ext: Vec<f64> = base.iter().zip(noise.iter().cycle()).map(|(b, e)| b + e).collect();
    ext[1] = 0.0;
    ext[n] = 1.0;
    if p.bc == BoundaryCondition::Clamped {
        ext[0] = ext[2];
        ext[n + 1] = ext[n - 1];
    }
    ext
}

fn problems() -> Vec<ProfileProblem> {
    vec![
        ProfileProblem::clamped(40),
        ProfileProblem::robin(0.0, 0.0, 40),
        ProfileProblem::robin(1.0, 2.0, 40),
        ProfileProblem::robin(1e4, 1e4, 40),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn random_grid_functions_cost_more(noise in prop::collection::vec(-0.1f64..0.1, 42), scale in 1e-6f64..1.0) {
        let noise: Vec<f64> = noise.iter().map(|e| e * scale).collect();
        for p in problems() {
            let sol = minimize_profile(&p).unwrap();
            let trial = perturbed(&p, &sol.extended(), &noise);
            let e = p.energy_of(&trial).unwrap();
            prop_assert!(e >= sol.energy * (1.0 - 1e-12), "{:?}: {e} < {}", p.bc, sol.energy);
        }
    }
}

#[test]
fn energy_identity_on_five_points() {
    for (a_s, a_p) in [(0.0, 0.0), (1.0, 2.0), (10.0, 10.0), (1e4, 1e4), (0.5, 100.0)] {
        let rc = RobinCoeffs {
            alpha_s: a_s,
            alpha_p: a_p,
        };
        let target = integrand_i1(&rc) + integrand_i2(&rc);
        let mut gaps = Vec::new();
        for n in [100, 200, 400] {
            let r = compare_to_closed_form(&ProfileProblem::robin(a_s, a_p, n)).unwrap();
            let gap = (r.oracle_energy - target).abs();
            let h = 1.0 / (n - 1) as f64;
            assert!(gap <= 30.0 * h * h, "({a_s}, {a_p}) n={n}: gap {gap:e}");
            gaps.push(gap);
        }
        if gaps[0] > 1e-12 {
            let order = (gaps[1] / gaps[2]).log2();
            assert!((order - 2.0).abs() < 0.2, "({a_s}, {a_p}): order {order}");
        }
    }
    let rc = RobinCoeffs {
        alpha_s: 1.0,
        alpha_p: 2.0,
    };
    assert!((integrand_i1(&rc) + integrand_i2(&rc) - 1560.0 / 676.0).abs() < 1e-13);
}

#[test]
fn discrete_robin_residual_shrinks_like_one_over_n() {
    let (a_s, a_p) = (3.0, 0.7);
    let mut residuals = Vec::new();
    for n in [50, 100, 200, 400] {
        let sol = minimize_profile(&ProfileProblem::robin(a_s, a_p, n)).unwrap();
        let (d0, d1) = sol.boundary_slopes();
        let (c0, c1) = sol.boundary_curvatures();
        residuals.push((c1 + a_s * d1).abs().max((c0 - a_p * d0).abs()));
    }
    for w in residuals.windows(2) {
        assert!(w[1] <= 0.6 * w[0] + 1e-9, "{residuals:?}");
    }
}

#[test]
fn clamped_energy_reproduces_sphere_coefficient() {
    let mut gaps = Vec::new();
    for n in [100, 200] {
        let e = minimize_profile(&ProfileProblem::clamped(n)).unwrap().energy;
        gaps.push((2.0 * PI * 0.25 * e - 6.0 * PI).abs());
    }
    assert!(gaps[1] < 0.01);
    assert!((gaps[0] / gaps[1]).log2() > 1.7, "{gaps:?}");
}
