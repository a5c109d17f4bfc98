use efimov_lab::radial::{find_spectrum, integrate_radial, DEFAULT_TOL_E};
use efimov_lab::{
    effective_potential, make_config, tabulate_branch, EffectivePotential, LengthUnit, LogGrid,
    RadialOptions, Regularization,
};

fn unitary_wall(r: f64, rho_max: f64) -> EffectivePotential {
    let grid = LogGrid::new(r, rho_max, 32).unwrap();
    EffectivePotential::unitary(&grid, Regularization::HardWall { r }).unwrap()
}

#[test]
fn state_k_has_k_nodes_and_energies_increase() {
    for reg in [
        Regularization::HardWall { r: 1.0 },
        Regularization::Cap { r: 1.0 },
    ] {
        let grid = LogGrid::new(1.0, 1e8, 32).unwrap();
        let pot = EffectivePotential::unitary(&grid, reg).unwrap();
        let spec = find_spectrum(&pot, 1e8, 10, DEFAULT_TOL_E, &RadialOptions::default()).unwrap();
        assert!(spec.states.len() >= 5);
        for (k, s) in spec.states.iter().enumerate() {
            assert_eq!(s.node_count, k);
            assert!(s.energy < 0.0);
            assert!(((s.kappa * s.kappa) / (-2.0 * s.energy) - 1.0).abs() < 1e-12);
            let changes = s
                .samples
                .windows(2)
                .filter(|w| w[0].1 * w[1].1 < 0.0)
                .count();
            assert_eq!(changes, k);
        }
        for w in spec.states.windows(2) {
            assert!(w[0].energy < w[1].energy);
        }
    }
}

#[test]
fn doubling_resolution_leaves_energies_unchanged() {
    let pot = unitary_wall(1.0, 1e8);
    let coarse = RadialOptions::default();
    let fine = RadialOptions {
        points_per_unit: 2.0 * coarse.points_per_unit,
    };
    let a = find_spectrum(&pot, 1e8, 5, DEFAULT_TOL_E, &coarse).unwrap();
    let b = find_spectrum(&pot, 1e8, 5, DEFAULT_TOL_E, &fine).unwrap();
    assert_eq!(a.states.len(), b.states.len());
    for (s, t) in a.states.iter().zip(&b.states) {
        let rel = (s.energy / t.energy - 1.0).abs();
        assert!(rel < DEFAULT_TOL_E, "E {}: relative change {rel}", s.energy);
    }
}

#[test]
fn energies_scale_as_inverse_square_of_cutoff() {
    let base = find_spectrum(
        &unitary_wall(1.0, 1e8),
        1e8,
        4,
        DEFAULT_TOL_E,
        &RadialOptions::default(),
    )
    .unwrap();
    for s in [0.1, 7.0, 100.0] {
        let scaled = find_spectrum(
            &unitary_wall(s, 1e8 * s),
            1e8 * s,
            4,
            DEFAULT_TOL_E,
            &RadialOptions::default(),
        )
        .unwrap();
        for (e0, e1) in base.energies().iter().zip(scaled.energies()) {
            assert!((e1 * s * s / e0 - 1.0).abs() < 0.005);
        }
    }
}

#[test]
fn small_rho_nodes_do_not_depend_on_energy() {
    let pot = unitary_wall(1.0, 1e11);
    let opts = RadialOptions::default();
    let energy: f64 = -1e-16;
    let kappa = (-2.0 * energy).sqrt();
    let a = integrate_radial(&pot, energy, 1e11, &opts).unwrap();
    let b = integrate_radial(&pot, energy / 10.0, 1e11, &opts).unwrap();
    let inner = |nodes: &[f64]| -> Vec<f64> {
        nodes
            .iter()
            .copied()
            .filter(|&r| r < 0.01 / kappa)
            .collect()
    };
    let (na, nb) = (inner(&a.nodes), inner(&b.nodes));
    assert!(na.len() >= 3);
    for (x, y) in na.iter().zip(&nb) {
        assert!((x / y - 1.0).abs() < 0.005, "{x} vs {y}");
    }
}

#[test]
fn level_count_grows_with_scattering_length() {
    let count = |a: f64| {
        let cfg = make_config(a, 0.5, LengthUnit::R).unwrap();
        let rho_max = 1e3 * a.abs();
        let grid = LogGrid::with_density(1.0, rho_max, 50.0).unwrap();
        let branch = tabulate_branch(&cfg, &grid, 0).unwrap();
        let pot = effective_potential(branch, Regularization::HardWall { r: 1.0 }).unwrap();
        find_spectrum(&pot, rho_max, 20, DEFAULT_TOL_E, &RadialOptions::default())
            .unwrap()
            .level_count()
    };
    for sign in [1.0, -1.0] {
        assert!(count(sign * 1e2) < count(sign * 1e5));
    }
}

#[test]
fn dimer_side_levels_lie_below_threshold() {
    let a = -100.0;
    let cfg = make_config(a, 0.5, LengthUnit::R).unwrap();
    let grid = LogGrid::with_density(1.0, 1e5, 50.0).unwrap();
    let branch = tabulate_branch(&cfg, &grid, 0).unwrap();
    let pot = effective_potential(branch, Regularization::HardWall { r: 1.0 }).unwrap();
    let spec = find_spectrum(&pot, 1e5, 10, DEFAULT_TOL_E, &RadialOptions::default()).unwrap();
    let threshold = 0.5 * cfg.dimer_two_e();
    assert!(!spec.states.is_empty());
    for s in &spec.states {
        assert!(s.energy < threshold);
    }
}
