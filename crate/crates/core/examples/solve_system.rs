// Zeros of a plane system inside a polydisc, with multiplicities.

use num_complex::Complex64;
use torsion_lab::poly::plane::{constant, x, y};
use torsion_lab::poly::{solve_system, Polydisc};

/// Zeros of `(x² - y, y² - 1/4)` within radius 1 of the origin.
pub fn run() -> torsion_lab::Result<usize> {
    let g = [&x().pow(2) - &y(), &y().pow(2) - &constant(0.25)];
    let zeros = solve_system(&g, &Polydisc::new(vec![Complex64::new(0.0, 0.0); 2], 1.0))?;
    for z in &zeros.points {
        println!("{:.6?}  multiplicity {}  residual {:.1e}", z.point, z.multiplicity, z.residual);
    }
    Ok(zeros.total_multiplicity())
}

fn main() {
    run().expect("plane solve");
}
