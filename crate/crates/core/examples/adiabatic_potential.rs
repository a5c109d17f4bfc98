// Lowest adiabatic potential for a finite scattering length.
//
// At small hyper-radius the potential is the universal `-C/rho^2`; on the
// dimer side it flattens to the two-body binding energy at large `rho`.

use efimov_lab::{
    effective_potential, make_config, tabulate_branch, LengthUnit, LogGrid, Regularization,
};

fn main() {
    let a = -10.0;
    let config = make_config(a, 0.5, LengthUnit::R).expect("valid system");
    let grid = LogGrid::new(1e-3, 2000.0, 13).expect("valid grid");
    let branch = tabulate_branch(&config, &grid, 0).expect("branch 0 tracks");
    let potential = effective_potential(branch, Regularization::None).expect("no cutoff");

    println!(
        "{:>12} {:>12} {:>14} {:>14}",
        "rho", "x", "nu^2", "2 rho^2 V"
    );
    for (i, &rho) in grid.values().iter().enumerate() {
        let v = potential.value(rho).expect("inside grid");
        println!(
            "{:>12.4e} {:>12.4e} {:>14.6e} {:>14.6e}",
            rho,
            config.x_of_rho(rho),
            potential.branch.nu_squared[i],
            2.0 * rho * rho * v
        );
    }
    let far = *grid.values().last().unwrap();
    println!(
        "2 V(rho_max) = {:.6e}, dimer energy -1/(mu a^2) = {:.6e}",
        2.0 * potential.value(far).unwrap(),
        config.dimer_two_e()
    );
}
