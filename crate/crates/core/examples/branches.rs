// Several hyperangular eigenvalues across the range of x.

use efimov_lab::solve_branches;

fn main() {
    for x in [-20.0, -1.0, 0.0, 0.903, 5.0, 100.0] {
        let roots = solve_branches(x, 4, 1e-10).expect("roots between poles");
        let values: Vec<String> = roots.iter().map(|r| format!("{:>12.6}", r.value)).collect();
        println!("x = {x:>7}: nu^2 = {}", values.join(" "));
    }
}
