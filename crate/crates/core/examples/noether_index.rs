// The Fredholm index of a Toeplitz operator from the winding of its symbol.

use torsion_lab::poly::MultiPolynomial;
use torsion_lab::symbol::{disc_root_count, noether_index_with};

/// Index of `T_f` for `f = (z - 0.3)(z + 0.5i)(z - 2)` and the root count
/// in the disc.
pub fn run() -> torsion_lab::Result<(i64, usize)> {
    use num_complex::Complex64 as C;
    let roots = [C::new(0.3, 0.0), C::new(0.0, -0.5), C::new(2.0, 0.0)];
    let mut coeffs = vec![C::new(1.0, 0.0)];
    for r in roots {
        coeffs = torsion_lab::poly::univariate::mul(&coeffs, &[-r, C::new(1.0, 0.0)]);
    }
    let f = MultiPolynomial::univariate(&coeffs);
    let w = noether_index_with(&f, 4096)?;
    let inside = disc_root_count(&f)?;
    println!("quadrature {:.12}  index {}  roots in the disc {inside}", w.quadrature, w.index);
    Ok((w.index, inside))
}

fn main() {
    run().expect("Noether index");
}
