// Homogeneous-matter equations of state and their stability.

use efimov_lab::meanfield::energy_per_particle;
use efimov_lab::{classify_stability, MatterModel, Stabilizer, Statistics};

fn main() {
    let models = [
        (
            "fermi, t0=-1",
            MatterModel::new(Statistics::Fermi, -1.0, Stabilizer::None, None),
        ),
        (
            "bose,  t0=+1",
            MatterModel::new(Statistics::Bose, 1.0, Stabilizer::None, None),
        ),
        (
            "bose,  t0=-1, three-body t3=1",
            MatterModel::new(
                Statistics::Bose,
                -1.0,
                Stabilizer::ThreeBody { t3: 1.0 },
                None,
            ),
        ),
        (
            "fermi, t0=-10, density-dependent t3=16 alpha=1",
            MatterModel::new(
                Statistics::Fermi,
                -10.0,
                Stabilizer::DensityDependent {
                    t3: 16.0,
                    alpha: 1.0,
                },
                None,
            ),
        ),
    ];
    for (label, model) in models {
        let model = model.expect("valid model");
        let report = classify_stability(&model).unwrap();
        print!("{label:<48} {:?}", report.classification);
        if let (Some(n), Some(e)) = (report.n_sat, report.energy_per_particle) {
            print!("  n_sat = {n:.6}  E/N = {e:.6}");
        }
        println!();
    }

    let model = MatterModel::new(
        Statistics::Fermi,
        -10.0,
        Stabilizer::ThreeBody { t3: 16.0 },
        None,
    )
    .unwrap();
    println!("\nE/N along the saturation curve:");
    for i in 1..=8 {
        let n = 0.25 * i as f64;
        println!(
            "  n = {n:.2}  E/N = {:+.5}",
            energy_per_particle(&model, n).unwrap()
        );
    }
    println!("\n{}", classify_stability(&model).unwrap().caveat);
}
