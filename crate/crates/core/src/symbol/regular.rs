//! The tame symbol on a smooth curve in a local coordinate `z`.
//!
//! With `f = (z - x_0)^m φ` and `g = (z - x_0)^k ψ`, where `φ(x_0)` and
//! `ψ(x_0)` are nonzero, `c_{x_0}(f, g) = (-1)^{mk} φ(x_0)^k / ψ(x_0)^m`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::univariate::vanishing_order;
use crate::poly::MultiPolynomial;
use crate::scalar::PolarScalar;

/// Relative tolerance for a zero remainder in repeated synthetic division.
pub const ORDER_TOL: f64 = 1e-10;

/// Order of vanishing at `x0` and the value there of the cofactor.
pub fn local_factorization(p: &MultiPolynomial, x0: Complex64) -> Result<(usize, PolarScalar)> {
    if p.nvars() != 1 {
        return Err(Error::shape("univariate polynomial", 1, p.nvars()));
    }
    let coeffs = p.univariate_coefficients(0)?;
    if coeffs.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::invalid("the zero polynomial has no tame symbol"));
    }
    let (order, cofactor) = vanishing_order(&coeffs, x0, ORDER_TOL)?;
    let value = PolarScalar::from_complex(cofactor)
        .ok_or_else(|| Error::Numerical("cofactor vanishes at the base point".into()))?;
    Ok((order, value))
}

/// `c_{x0}(f, g)` for univariate polynomials.
pub fn tame_symbol_regular(f: &MultiPolynomial, g: &MultiPolynomial, x0: Complex64) -> Result<PolarScalar> {
    let (m, phi) = local_factorization(f, x0)?;
    let (k, psi) = local_factorization(g, x0)?;
    Ok(PolarScalar::sign(m * k % 2 == 1) * phi.powi(k as i64) / psi.powi(m as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn p(coeffs: &[f64]) -> MultiPolynomial {
        MultiPolynomial::univariate_real(coeffs)
    }

    #[test]
    fn golden_values() {
        let zero = c64(0.0, 0.0);
        let z = p(&[0.0, 1.0]);
        let c = |f: &MultiPolynomial, g: &MultiPolynomial| tame_symbol_regular(f, g, zero).unwrap().to_complex();
        assert!((c(&z, &z) - c64(-1.0, 0.0)).norm() < 1e-14);
        assert!((c(&p(&[0.0, 0.0, 1.0]), &p(&[0.0, 0.0, 0.0, 1.0])) - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((c(&p(&[1.0, 1.0]), &z) - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((c(&p(&[3.0, 1.0]), &z) - c64(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn units_at_a_translated_point() {
        // f = (z - 2)^2 (z + 1), g = (z - 2): (-1)^2 · 3^1 / 1^2
        let f = p(&[4.0, 0.0, -3.0, 1.0]);
        let g = p(&[-2.0, 1.0]);
        let v = tame_symbol_regular(&f, &g, c64(2.0, 0.0)).unwrap();
        assert!((v.to_complex() - c64(3.0, 0.0)).norm() < 1e-10);
    }
}
