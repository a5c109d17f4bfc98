mod common;

use efimov_lab::hyperangular::{solve_branches, tabulate_branch, DEFAULT_TOL};
use efimov_lab::{efimov_constants, make_config, solve_branch0, LengthUnit, LogGrid, SystemConfig};

#[test]
fn branch0_matches_dense_scan_oracle() {
    for x in common::uniform_draws(100, -50.0, 50.0) {
        let got = solve_branch0(x, DEFAULT_TOL).unwrap().value;
        let want = common::dense_scan_branch0(x, 1_000_000);
        assert!((got - want).abs() <= 1e-9, "x = {x}: {got} vs {want}");
    }
}

#[test]
fn constants_match_bisection_oracle() {
    let c = efimov_constants(1e-12).unwrap();
    let b = common::oracle_b();
    assert!((c.b - b).abs() < 1e-12);
    assert!((c.c - (b * b + 0.25)).abs() < 1e-11);
}

#[test]
fn deep_dimer_side_root() {
    let got = solve_branch0(-50.0, DEFAULT_TOL).unwrap().value;
    assert!((got / -2500.0 - 1.0).abs() < 0.01);
    assert!((got - common::dense_scan_branch0(-50.0, 1_000_000)).abs() < 1e-9);
}

#[test]
fn branches_at_unitarity_match_scan_over_nu() {
    // Sign changes of lhs(nu^2) on nu in (0, 12) away from poles, then bisection.
    let samples = 1_200_000;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..samples {
        let nu = 12.0 * i as f64 / samples as f64;
        let v = common::lhs(nu * nu);
        if let Some((nu0, v0)) = prev {
            // A pole flips sign through a huge value; a root through a small one.
            if v0.signum() != v.signum() && v0.abs() < 50.0 && v.abs() < 50.0 {
                let (mut l, mut r) = (nu0, nu);
                for _ in 0..100 {
                    let m = 0.5 * (l + r);
                    if common::lhs(m * m).signum() == v0.signum() {
                        l = m;
                    } else {
                        r = m;
                    }
                }
                roots.push((0.5 * (l + r)).powi(2));
            }
        }
        prev = Some((nu, v));
    }
    let got = solve_branches(0.0, 3, DEFAULT_TOL).unwrap();
    assert!(got[0].value < 0.0);
    assert!(
        (got[1].value - roots[0]).abs() < 1e-8,
        "{} vs {}",
        got[1].value,
        roots[0]
    );
    assert!(
        (got[2].value - roots[1]).abs() < 1e-8,
        "{} vs {}",
        got[2].value,
        roots[1]
    );
}

#[test]
fn refining_the_grid_halves_step_changes() {
    let cfg = make_config(-1.0, 0.5, LengthUnit::R).unwrap();
    let grid = LogGrid::new(1e-2, 10.0, 400).unwrap();
    let coarse = tabulate_branch(&cfg, &grid, 0).unwrap();
    let fine = tabulate_branch(&cfg, &grid.refined(), 0).unwrap();
    let ratio = fine.max_step_change() / coarse.max_step_change();
    assert!((0.4..=0.6).contains(&ratio), "ratio {ratio}");
}

#[test]
fn small_rho_limit_of_finite_a_branch() {
    let b = efimov_constants(1e-12).unwrap().b;
    for a in [1.0, -1.0, 1e3, -1e3] {
        let cfg = make_config(a, 0.5, LengthUnit::R).unwrap();
        let rho = 1e-4 * a.abs();
        let grid = LogGrid::new(rho, 10.0 * rho, 8).unwrap();
        let branch = tabulate_branch(&cfg, &grid, 0).unwrap();
        assert!((branch.nu_squared[0] + b * b).abs() < 1e-3);
    }
}

#[test]
fn unitarity_has_zero_x_everywhere() {
    let cfg = SystemConfig::unitarity();
    for rho in [1e-8, 1.0, 1e8] {
        assert_eq!(cfg.x_of_rho(rho), 0.0);
    }
}
