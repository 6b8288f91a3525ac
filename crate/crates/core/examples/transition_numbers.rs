// Transition numbers τ_{i,j} of three functions of a commuting tuple.

use torsion_lab::generate;
use torsion_lab::linalg::RankPolicy;
use torsion_lab::poly::MultiPolynomial;
use torsion_lab::torsion::transition_number;
use torsion_lab::PolarScalar;

/// The cocycle defect `|τ_{0,1} τ_{1,2} / τ_{0,2} - 1|` and the antisymmetry
/// defect `|τ_{0,1} τ_{1,0} - 1|`.
pub fn run() -> torsion_lab::Result<(f64, f64)> {
    let mut rng = generate::rng(8);
    let gt = generate::commuting_tuple(&mut rng, 4, 2, 2);
    let g: Vec<MultiPolynomial> = gt.points.iter().cycle().take(3).map(|(p, _)| generate::linear_form_through(&mut rng, p)).collect();
    let policy = RankPolicy::default();
    let tau = |i, j| transition_number(&gt.tuple, &g, i, j, &policy);
    let cocycle = (tau(0, 1)? * tau(1, 2)?).relative_distance(tau(0, 2)?);
    let anti = (tau(0, 1)? * tau(1, 0)?).relative_distance(PolarScalar::ONE);
    println!("τ01 = {}, τ12 = {}, τ02 = {}", tau(0, 1)?, tau(1, 2)?, tau(0, 2)?);
    println!("cocycle defect {cocycle:.2e}, antisymmetry defect {anti:.2e}");
    Ok((cocycle, anti))
}

fn main() {
    run().expect("transition numbers");
}
