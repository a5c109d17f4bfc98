// The universal constants of the zero-range three-body problem.
//
// Run with `cargo run --example constants`.

use efimov_lab::efimov_constants;

fn main() {
    let c = efimov_constants(1e-12).expect("root of the imaginary branch");
    println!("b                 = {:.12}", c.b);
    println!("C = b^2 + 1/4     = {:.12}", c.c);
    println!("residual          = {:.3e}", c.residual);
    println!("energy ratio      = {:.4}", c.energy_ratio());
    println!("node ratio        = {:.5}", c.node_ratio());
    println!("nodes per decade  = {:.6}", c.nodes_per_decade());
}
