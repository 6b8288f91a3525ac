// Joint torsion of a commuting pair of cochain maps on a Koszul complex.

use torsion_lab::generate;
use torsion_lab::linalg::RankPolicy;
use torsion_lab::torsion::{joint_torsion_with, JointTorsionOptions};
use torsion_lab::PolarScalar;

/// Joint torsion of `(f ⊗ 1, g ⊗ 1)` on `K(A)`, where `f` vanishes at one
/// joint eigenvalue and `g` at another. On a finite-dimensional space it is 1.
pub fn run() -> torsion_lab::Result<PolarScalar> {
    let mut rng = generate::rng(17);
    let (_, problem) = generate::koszul_joint_problem(&mut rng, 4, 2);
    let report = joint_torsion_with(
        &problem,
        &JointTorsionOptions { policy: RankPolicy::default(), ..Default::default() },
    )?;
    println!("τ(δ(g)) on the cone of f: {}", report.torsion_delta_g);
    println!("τ(δ(f)) on the cone of g: {}", report.torsion_delta_f);
    println!("cone swap: {}", report.cone_swap);
    println!("joint torsion: {}", report.value);
    Ok(report.value)
}

fn main() {
    run().expect("joint torsion");
}
