// Log-periodic nodes of a deep bound state.

use efimov_lab::{
    efimov_constants, find_spectrum, node_analysis, EffectivePotential, LogGrid, RadialOptions,
    Regularization,
};

fn main() {
    let grid = LogGrid::new(1.0, 1e8, 32).unwrap();
    let potential =
        EffectivePotential::unitary(&grid, Regularization::HardWall { r: 1.0 }).unwrap();
    let spectrum = find_spectrum(&potential, 1e8, 5, 1e-10, &RadialOptions::default()).unwrap();
    let state = spectrum.states.last().unwrap();
    let analysis = node_analysis(state).expect("deep state has nodes");

    println!("level {} at E = {:.6e}", state.node_count, state.energy);
    for (k, rho) in analysis.window_nodes.iter().enumerate() {
        println!("  node {k}: rho = {rho:.6e}");
    }
    println!(
        "mean ratio {:.5} +- {:.1e}; e^(pi/b) = {:.5}",
        analysis.mean_ratio,
        analysis.std_ratio,
        efimov_constants(1e-12).unwrap().node_ratio()
    );
}
