// Local intersection multiplicities at the origin.

use num_complex::Complex64;
use torsion_lab::poly::plane::{from_real_terms, x, y};
use torsion_lab::poly::{multiplicity, MultiPolynomial};

/// `m_0(x², y³)`, `m_0(y - x², y)` and `m_0(z^k)` for `k = 1..=5`.
pub fn run() -> torsion_lab::Result<Vec<usize>> {
    let origin = [Complex64::new(0.0, 0.0); 2];
    let mut out = vec![
        multiplicity(&[x().pow(2), y().pow(3)], &origin)?,
        multiplicity(&[&y() - &from_real_terms(&[(2, 0, 1.0)]), y()], &origin)?,
    ];
    let z = MultiPolynomial::univariate_real(&[0.0, 1.0]);
    for k in 1..=5 {
        out.push(multiplicity(&[z.pow(k)], &origin[..1])?);
    }
    println!("m0(x², y³) = {}, m0(y - x², y) = {}, m0(z^k) = {:?}", out[0], out[1], &out[2..]);
    Ok(out)
}

fn main() {
    run().expect("multiplicity");
}
