// The cone of K(B) on K(A) is K((B, A)).

use torsion_lab::generate;
use torsion_lab::koszul::cone_koszul_isomorphism;

/// Largest entry of the difference between the cone differentials, carried
/// through the isomorphism, and the Koszul differentials of the extended tuple.
pub fn run() -> torsion_lab::Result<f64> {
    let mut rng = generate::rng(3);
    let gt = generate::commuting_tuple(&mut rng, 3, 2, 2);
    let b = generate::linear_operator_through(&mut rng, &gt.tuple, &gt.points[0].0);
    let iso = cone_koszul_isomorphism(&gt.tuple, &b)?;
    let mut gap = 0.0f64;
    for k in iso.cone.degrees() {
        let phi = iso.isomorphism.between(k, &iso.cone, &iso.koszul);
        let next = iso.isomorphism.between(k + 1, &iso.cone, &iso.koszul);
        let lhs = &next * iso.cone.differential(k);
        let rhs = iso.koszul.differential(k) * &phi;
        gap = gap.max((lhs - rhs).camax());
    }
    println!("cone dims {:?}, Koszul dims {:?}", iso.cone.dims(), iso.koszul.dims());
    println!("chain-map defect {gap:.2e}");
    Ok(gap)
}

fn main() {
    run().expect("cone isomorphism");
}
