// Without a cutoff the spectrum does not exist: every decade of inner
// cutoff adds the same number of nodes at any fixed energy.

use efimov_lab::{
    collapse_probe, efimov_constants, find_spectrum, EffectivePotential, LogGrid, RadialOptions,
    Regularization,
};

fn main() {
    let grid = LogGrid::new(1e-40, 1e4, 16).unwrap();
    let potential = EffectivePotential::unitary(&grid, Regularization::None).unwrap();

    match find_spectrum(&potential, 1e4, 5, 1e-9, &RadialOptions::default()) {
        Ok(_) => unreachable!("an unregularized spectrum is refused"),
        Err(e) => println!("spectrum without cutoff: {e}\n"),
    }

    let expected = efimov_constants(1e-12).unwrap().nodes_per_decade();
    for energy in [-1e-3, -1e-4] {
        let probe =
            collapse_probe(&potential, energy, 1.0, 40, 1e4, &RadialOptions::default()).unwrap();
        println!(
            "E = {energy:e}: nodes per decade {:.4} (b ln10/pi = {expected:.4}), R^2 = {:.5}",
            probe.nodes_per_decade(),
            probe.fit.r_squared
        );
        println!(
            "  counts for cutoff 10^-k, k = 0..: {:?}",
            probe.node_counts
        );
    }
}
