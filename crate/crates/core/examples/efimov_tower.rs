// Geometric bound-state tower at unitarity with two regularizations.

use efimov_lab::{
    efimov_constants, find_spectrum, EffectivePotential, LogGrid, RadialOptions, Regularization,
};

fn main() {
    let r = 1.0;
    let rho_max = 1e8;
    let reference = efimov_constants(1e-12).unwrap().energy_ratio();
    let grid = LogGrid::new(r, rho_max, 32).unwrap();

    for reg in [Regularization::HardWall { r }, Regularization::Cap { r }] {
        let potential = EffectivePotential::unitary(&grid, reg).unwrap();
        let spectrum = find_spectrum(&potential, rho_max, 6, 1e-10, &RadialOptions::default())
            .expect("regularized spectrum");
        println!("{} (R = {r}, rho_max = {rho_max:e})", reg.name());
        for (n, s) in spectrum.states.iter().enumerate() {
            let flag = if s.box_contaminated { "  box" } else { "" };
            println!(
                "  n={n}  E={:.9e}  kappa={:.6e}  nodes={}{flag}",
                s.energy, s.kappa, s.node_count
            );
        }
        for ratio in spectrum.interior_ratios() {
            println!("  E_n/E_n+1 = {ratio:.4}   (e^(2 pi/b) = {reference:.4})");
        }
        let e0 = spectrum.states[0].energy;
        println!("  |E_0| 2 R^2 = {:.5}", 2.0 * r * r * e0.abs());
    }
}
