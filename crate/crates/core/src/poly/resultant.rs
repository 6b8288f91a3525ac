//! Sylvester resultants of two bivariate polynomials.
//!
//! With `p = Σ_{i≤m} a_i t^i` and `q = Σ_{j≤l} b_j t^j` in the eliminated
//! variable `t`, the Sylvester matrix has `l` rows carrying `a_0 … a_m`
//! (row `i` starting at column `i`) followed by `m` rows carrying
//! `b_0 … b_l`. Its determinant is a polynomial in the kept variable.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::univariate::{self, trim};
use super::MultiPolynomial;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ONE, ZERO};

/// Largest Sylvester size evaluated by fraction-free elimination.
pub const FRACTION_FREE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultantMethod {
    /// Fraction-free elimination up to the size limit, interpolation above.
    Auto,
    /// Fraction-free (Bareiss) elimination over polynomial entries.
    FractionFree,
    /// Numerical determinants at roots of unity followed by an inverse DFT.
    Interpolation,
}

type Poly = Vec<Complex64>;

fn poly_max(p: &Poly) -> f64 {
    p.iter().fold(0.0f64, |m, c| m.max(c.norm()))
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or(ZERO) - b.get(k).copied().unwrap_or(ZERO))
        .collect()
}

/// Quotient of a division known to be exact; the remainder is discarded.
fn div_exact(num: &Poly, den: &Poly) -> Poly {
    let dmax = poly_max(den);
    let mut dd = den.clone();
    while dd.len() > 1 && dd.last().unwrap().norm() <= 1e-12 * dmax {
        dd.pop();
    }
    let mut rem = num.clone();
    if rem.len() < dd.len() {
        return vec![ZERO];
    }
    let dl = dd.len() - 1;
    let lead = dd[dl];
    let mut q = vec![ZERO; rem.len() - dl];
    for k in (0..q.len()).rev() {
        let c = rem[k + dl] / lead;
        q[k] = c;
        for (j, &d) in dd.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    q
}

struct Sylvester {
    entries: Vec<Vec<Poly>>,
    size: usize,
}

fn sylvester(p: &MultiPolynomial, q: &MultiPolynomial, eliminate: usize) -> Result<Sylvester> {
    if p.nvars() != 2 || q.nvars() != 2 {
        return Err(Error::Unsupported("resultants are implemented for two variables".into()));
    }
    if eliminate > 1 {
        return Err(Error::invalid("eliminated variable must be 0 or 1"));
    }
    let keep = 1 - eliminate;
    let to_univariate = |r: &MultiPolynomial| -> Result<Vec<Poly>> {
        r.coefficients_in(eliminate)
            .iter()
            .map(|c| c.univariate_coefficients(keep))
            .collect()
    };
    let a = to_univariate(p)?;
    let b = to_univariate(q)?;
    let m = a.len() - 1;
    let l = b.len() - 1;
    if m == 0 || l == 0 || p.is_zero() || q.is_zero() {
        return Err(Error::invalid(
            "both polynomials need positive degree in the eliminated variable",
        ));
    }
    let n = m + l;
    let mut entries = vec![vec![vec![ZERO]; n]; n];
    for i in 0..l {
        for (k, c) in a.iter().enumerate() {
            entries[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            entries[l + i][i + k] = c.clone();
        }
    }
    Ok(Sylvester { entries, size: n })
}

fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = ONE;
    let mut prev: Poly = vec![ONE];
    for k in 0..n.saturating_sub(1) {
        let scale = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .map(|(i, j)| poly_max(&m[i][j]))
            .fold(0.0f64, f64::max);
        let (piv, best) = (k..n)
            .map(|i| (i, poly_max(&m[i][k])))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= 1e-12 * scale || best == 0.0 {
            return vec![ZERO];
        }
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = poly_sub(
                    &univariate::mul(&m[k][k], &m[i][j]),
                    &univariate::mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = div_exact(&num, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].iter().map(|c| c * sign).collect()
}

fn interpolate(s: &Sylvester, degree_bound: usize) -> Poly {
    let nodes = degree_bound + 1;
    let values: Vec<Complex64> = (0..nodes)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
            let m = ComplexMatrix::from_fn(s.size, s.size, |i, j| univariate::eval(&s.entries[i][j], z));
            linalg::det(&m)
        })
        .collect();
    (0..nodes)
        .map(|j| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / nodes as f64))
                .sum::<Complex64>()
                / nodes as f64
        })
        .collect()
}

/// `Res_t(p, q)` with the default method choice.
pub fn resultant(p: &MultiPolynomial, q: &MultiPolynomial, eliminate: usize) -> Result<MultiPolynomial> {
    resultant_with(p, q, eliminate, ResultantMethod::Auto)
}

/// `Res_t(p, q)` as a univariate polynomial in the kept variable.
pub fn resultant_with(
    p: &MultiPolynomial,
    q: &MultiPolynomial,
    eliminate: usize,
    method: ResultantMethod,
) -> Result<MultiPolynomial> {
    let s = sylvester(p, q, eliminate)?;
    let keep = 1 - eliminate;
    let use_bareiss = match method {
        ResultantMethod::Auto => s.size <= FRACTION_FREE_LIMIT,
        ResultantMethod::FractionFree => true,
        ResultantMethod::Interpolation => false,
    };
    let coeffs = if use_bareiss {
        bareiss(s.entries)
    } else {
        let l = q.degree_in(eliminate) as usize;
        let m = p.degree_in(eliminate) as usize;
        let bound = l * p.degree_in(keep) as usize + m * q.degree_in(keep) as usize;
        interpolate(&s, bound)
    };
    let scale = p.l1_norm().powi(q.degree_in(eliminate) as i32) * q.l1_norm().powi(p.degree_in(eliminate) as i32);
    let cleaned: Poly = coeffs
        .into_iter()
        .map(|c| if c.norm() <= 1e-13 * scale { ZERO } else { c })
        .collect();
    Ok(MultiPolynomial::univariate(&trim(&cleaned)))
}
