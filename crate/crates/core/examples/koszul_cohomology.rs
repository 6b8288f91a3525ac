// Koszul cohomology of a commuting pair and its index.

use torsion_lab::fredholm::cohomology;
use torsion_lab::koszul::{build_koszul, joint_spectrum, koszul_index, CommutingTuple};
use torsion_lab::linalg::{real_matrix, RankPolicy};

/// Cohomology dimensions of K(A - λ) at every joint eigenvalue, lowest
/// degree first.
pub fn run() -> torsion_lab::Result<Vec<Vec<usize>>> {
    let a = CommutingTuple::new(vec![
        real_matrix(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]),
        real_matrix(&[&[0.0, 3.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, -1.0]]),
    ])?;
    let policy = RankPolicy::default();
    let mut out = Vec::new();
    for sp in joint_spectrum(&a)? {
        let h = cohomology(build_koszul(&a.translate(&sp.point)?).complex(), &policy);
        let dims: Vec<usize> = h.dims().into_iter().map(|(_, d)| d).collect();
        println!(
            "λ = {:.3?}  multiplicity {}  H = {dims:?}  index {}",
            sp.point,
            sp.multiplicity,
            koszul_index(&a, &sp.point, &policy)?
        );
        out.push(dims);
    }
    Ok(out)
}

fn main() {
    run().expect("Koszul cohomology");
}
