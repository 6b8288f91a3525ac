//! Local intersection multiplicity `dim C[[z - λ]] / ⟨g⟩` via truncated
//! quotient dimensions.
//!
//! After translating `λ` to the origin, `d_N = dim C[z] / (⟨g⟩ + m^N)` is
//! the number of monomials of degree `< N` minus the rank of the matrix
//! whose rows are the truncations of `z^α g_i`. For an isolated zero `d_N`
//! increases and then stays constant at the multiplicity.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::MultiPolynomial;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, RankPolicy};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiplicityOptions {
    /// Largest truncation order tried.
    pub max_order: usize,
    /// Relative tolerance for deciding `g(λ) = 0`.
    pub zero_tol: f64,
    pub policy: RankPolicy,
}

impl Default for MultiplicityOptions {
    fn default() -> Self {
        MultiplicityOptions {
            max_order: 30,
            zero_tol: 1e-10,
            policy: RankPolicy::default(),
        }
    }
}

/// Exponent vectors of total degree `< order`, by degree then lexicographically.
fn monomials_below(nvars: usize, order: u32) -> Vec<Vec<u32>> {
    fn with_degree(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=deg).rev() {
            prefix.push(k);
            with_degree(nvars, deg - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..order {
        with_degree(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn truncated_quotient_dim(g: &[MultiPolynomial], order: u32, policy: &RankPolicy) -> usize {
    let nvars = g[0].nvars();
    let monos = monomials_below(nvars, order);
    let index: BTreeMap<&[u32], usize> = monos.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
    for gi in g {
        let low = gi.order();
        for alpha in &monos {
            let shift: u32 = alpha.iter().sum();
            if shift + low >= order {
                continue;
            }
            let row: Vec<(usize, Complex64)> = gi
                .terms()
                .filter_map(|(e, c)| {
                    let sum: Vec<u32> = e.iter().zip(alpha).map(|(a, b)| a + b).collect();
                    index.get(sum.as_slice()).map(|&col| (col, *c))
                })
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    let mut m = ComplexMatrix::zeros(rows.len(), monos.len());
    for (i, row) in rows.iter().enumerate() {
        for &(j, c) in row {
            m[(i, j)] += c;
        }
    }
    monos.len() - linalg::rank(&m, policy).rank
}

/// `m_λ(g)` with default options.
pub fn multiplicity(g: &[MultiPolynomial], point: &[Complex64]) -> Result<usize> {
    multiplicity_with(g, point, &MultiplicityOptions::default())
}

/// `m_λ(g)` for `n` polynomials in `n` variables; zero when some `g_i(λ) ≠ 0`.
pub fn multiplicity_with(
    g: &[MultiPolynomial],
    point: &[Complex64],
    opts: &MultiplicityOptions,
) -> Result<usize> {
    let n = point.len();
    if g.len() != n || n == 0 {
        return Err(Error::shape("square polynomial system", n, g.len()));
    }
    if let Some(bad) = g.iter().find(|p| p.nvars() != n) {
        return Err(Error::shape("polynomial variable count", n, bad.nvars()));
    }
    for p in g {
        let v = p.eval(point)?;
        if v.norm() > opts.zero_tol * p.eval_scale(point).max(1.0) {
            return Ok(0);
        }
    }
    let shifted: Vec<MultiPolynomial> = g
        .iter()
        .map(|p| {
            // Drop the (numerically tiny) constant term left by the shift.
            let s = p.shift(point)?.normalized();
            let constant = vec![0; n];
            Ok(MultiPolynomial::from_terms(
                n,
                s.terms().filter(|(e, _)| **e != constant).map(|(e, c)| (e.clone(), *c)),
            )?)
        })
        .collect::<Result<_>>()?;
    if shifted.iter().any(MultiPolynomial::is_zero) {
        return Err(Error::NotIsolated {
            max_order: opts.max_order,
        });
    }
    let mut history: Vec<usize> = Vec::new();
    for order in 1..=opts.max_order as u32 {
        history.push(truncated_quotient_dim(&shifted, order, &opts.policy));
        if let [.., a, b, c] = history.as_slice() {
            if a == b && b == c {
                return Ok(*c);
            }
        }
    }
    Err(Error::NotIsolated {
        max_order: opts.max_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::poly::plane::{from_real_terms, x, y};

    #[test]
    fn transversal_axes() {
        assert_eq!(multiplicity(&[x(), y()], &[c64(0.0, 0.0); 2]).unwrap(), 1);
    }

    #[test]
    fn monomial_quotient() {
        let g = [from_real_terms(&[(2, 0, 1.0)]), from_real_terms(&[(0, 3, 1.0)])];
        assert_eq!(multiplicity(&g, &[c64(0.0, 0.0); 2]).unwrap(), 6);
    }

    #[test]
    fn univariate_powers() {
        for k in 1..=10u32 {
            let g = MultiPolynomial::monomial(vec![k], c64(1.0, 0.0));
            assert_eq!(multiplicity(&[g], &[c64(0.0, 0.0)]).unwrap(), k as usize);
        }
    }

    #[test]
    fn regular_point_is_zero() {
        let g = [&x() + &from_real_terms(&[(0, 0, 1.0)]), y()];
        assert_eq!(multiplicity(&g, &[c64(0.0, 0.0); 2]).unwrap(), 0);
    }

    #[test]
    fn translated_point() {
        let g = [
            from_real_terms(&[(2, 0, 1.0), (1, 0, -2.0), (0, 0, 1.0)]),
            &y() - &x(),
        ];
        assert_eq!(multiplicity(&g, &[c64(1.0, 0.0); 2]).unwrap(), 2);
    }

    #[test]
    fn curve_component_is_not_isolated() {
        let g = [x(), x()];
        assert!(matches!(
            multiplicity(&g, &[c64(0.0, 0.0); 2]),
            Err(Error::NotIsolated { .. })
        ));
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials_below(2, 3).len(), 6);
        assert_eq!(monomials_below(3, 2).len(), 4);
    }
}
