// Joint torsion, the Lefschetz quotient and the explicit spectral product
// when Z(h, f, g) misses the joint spectrum.

use torsion_lab::generate;
use torsion_lab::linalg::RankPolicy;
use torsion_lab::torsion::{explicit_nonsingular_product, joint_torsion_nonsingular, koszul_joint_torsion};
use torsion_lab::PolarScalar;

pub fn run() -> torsion_lab::Result<[PolarScalar; 3]> {
    let mut rng = generate::rng(5);
    let gt = generate::commuting_tuple(&mut rng, 5, 3, 3);
    let d = generate::nonsingular_data(&mut rng, &gt.points);
    let policy = RankPolicy::default();
    let jt = koszul_joint_torsion(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
    let lefschetz = joint_torsion_nonsingular(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
    let explicit = explicit_nonsingular_product(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
    println!("joint torsion       {jt}");
    println!("Lefschetz quotient  {lefschetz}");
    println!("explicit product    {explicit}");
    Ok([jt, lefschetz, explicit])
}

fn main() {
    run().expect("nonsingular identity");
}
