// The six-term sequence of a cochain map and its torsion.

use torsion_lab::fredholm::{six_term, CochainComplex, CochainMap};
use torsion_lab::linalg::{real_matrix, RankPolicy};
use torsion_lab::torsion::{torsion_iso, ComplementChoice};
use torsion_lab::PolarScalar;

/// Torsion of `f = [[2, 0], [1, 0]]` on `C²` in degree 0, whose cone carries
/// cohomology in both parities.
pub fn run() -> torsion_lab::Result<PolarScalar> {
    let x = CochainComplex::concentrated(0, 2);
    let f = CochainMap::from_components(0, vec![real_matrix(&[&[2.0, 0.0], &[1.0, 0.0]])]);
    let policy = RankPolicy::default();
    let st = six_term(&x, &x, &f, &policy)?;
    println!("cone cohomology {:?}", st.cone_cohomology.dims());
    let tau = torsion_iso(&st.sequence, ComplementChoice::Orthogonal, &policy)?;
    let other = torsion_iso(&st.sequence, ComplementChoice::Randomized { seed: 9 }, &policy)?;
    println!("torsion {tau}  (random complements: {other})");
    Ok(tau)
}

fn main() {
    run().expect("six-term torsion");
}
