// Closed-form tame symbols on a smooth curve.

use num_complex::Complex64;
use torsion_lab::poly::MultiPolynomial;
use torsion_lab::symbol::tame_symbol_regular;
use torsion_lab::PolarScalar;

/// `c_0(z, z)`, `c_0(1 + z, z)` and `c_0(z², 3z)`.
pub fn run() -> torsion_lab::Result<Vec<PolarScalar>> {
    let p = MultiPolynomial::univariate_real;
    let zero = Complex64::new(0.0, 0.0);
    let pairs = [(p(&[0.0, 1.0]), p(&[0.0, 1.0])), (p(&[1.0, 1.0]), p(&[0.0, 1.0])), (p(&[0.0, 0.0, 1.0]), p(&[0.0, 3.0]))];
    let mut out = Vec::new();
    for (f, g) in &pairs {
        let c = tame_symbol_regular(f, g, zero)?;
        println!("c0 = {c}");
        out.push(c);
    }
    Ok(out)
}

fn main() {
    run().expect("regular symbols");
}
