// The perturbation limit of the tame symbol on the cusp y² = x³.

use num_complex::Complex64;
use torsion_lab::poly::plane::{x, y};
use torsion_lab::symbol::{tame_symbol_local, LimitSchedule, LocalSymbol, SymbolProblem};

/// `c_0(y² - x³; x, y)`, which equals 1.
pub fn run() -> torsion_lab::Result<LocalSymbol> {
    let h = &y().pow(2) - &x().pow(3);
    let problem = SymbolProblem::with_admissible_radius(h, x(), y(), vec![Complex64::new(0.0, 0.0); 2])?;
    let s = tame_symbol_local(&problem, &LimitSchedule::default())?;
    for t in &s.trace {
        println!("w = {:.3e}  q(w) = {:.9}", t.w, t.q);
    }
    println!("radius {}, m(h, g) = {}, θ = {:.4}", problem.radius(), s.multiplicity_hg, s.theta);
    println!("symbol {} after {} steps", s.value, s.trace.len());
    Ok(s)
}

fn main() {
    run().expect("cusp symbol");
}
