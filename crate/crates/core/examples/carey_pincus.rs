// The Carey–Pincus product against the global product of local symbols on
// the Hardy space model.

use torsion_lab::generate;
use torsion_lab::symbol::{carey_pincus, joint_torsion_global_disc, DiscModelProblem, LocalMethod};

/// Relative gap between `carey_pincus(f, g)` and the global product for
/// `(g, f)`.
pub fn run() -> torsion_lab::Result<f64> {
    let mut rng = generate::rng(21);
    let f = generate::disc_polynomial(&mut rng, 3, 0.1);
    let g = generate::disc_polynomial(&mut rng, 4, 0.1);
    let p = DiscModelProblem::new(f, g)?;
    let cp = carey_pincus(&p)?;
    let global = joint_torsion_global_disc(&p.swapped(), LocalMethod::Regular)?;
    for factor in &global.factors {
        println!("λ = {:.4}  index {}  symbol {:?}", factor.point[0], factor.index, factor.symbol.map(|s| s.to_complex()));
    }
    let gap = cp.relative_distance(global.value);
    println!("Carey–Pincus {cp}\nglobal       {}\ngap {gap:.2e}", global.value);
    Ok(gap)
}

fn main() {
    run().expect("Carey-Pincus");
}
