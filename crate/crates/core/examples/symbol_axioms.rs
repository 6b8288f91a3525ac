// Antisymmetry, bimultiplicativity and the Steinberg relation of the tame
// symbol on the cusp.

use torsion_lab::poly::plane::{constant, x, y};
use torsion_lab::symbol::{symbol_axioms_check, AxiomInputs, LimitSchedule};

/// Largest axiom deviation.
pub fn run() -> torsion_lab::Result<f64> {
    let inputs = AxiomInputs {
        h: &y().pow(2) - &x().pow(3),
        f1: x(),
        f2: y(),
        f3: &constant(1.0) + &x(),
        t: x(),
        point: vec![num_complex::Complex64::new(0.0, 0.0); 2],
    };
    let r = symbol_axioms_check(&inputs, &LimitSchedule::default())?;
    println!("antisymmetry     {:.2e}", r.antisymmetry.deviation);
    println!("multiplicativity {:.2e}", r.multiplicativity.deviation);
    println!("Steinberg        {:.2e}", r.steinberg.deviation);
    Ok(r.max_deviation())
}

fn main() {
    run().expect("symbol axioms");
}
