//! Dense univariate polynomials, stored as coefficient slices ordered by
//! increasing degree.
//!
//! Roots come from companion-matrix eigenvalues. A root of multiplicity `k`
//! comes back from the eigensolver as `k` values spread over a radius of
//! order `eps^{1/k}`, but their mean is accurate; clusters are therefore
//! formed around each root and accepted when the Taylor coefficients of
//! orders `< k` at the cluster mean are negligible.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, ZERO};

use super::PRUNE_TOL;

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterOptions {
    /// Eigenvalues closer than this are merged (single linkage) when the
    /// merged cluster passes the multiple-root validation.
    pub cluster_tol: f64,
    /// Backward-error size below which low-order Taylor coefficients count
    /// as zero when validating a candidate multiple root.
    pub validation_tol: f64,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            cluster_tol: 1e-6,
            validation_tol: 1e-10,
        }
    }
}

/// Drops negligible top-degree coefficients.
pub fn trim(coeffs: &[Complex64]) -> Vec<Complex64> {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let mut out = coeffs.to_vec();
    while let Some(last) = out.last() {
        if last.norm() <= PRUNE_TOL * max || *last == ZERO {
            out.pop();
        } else {
            break;
        }
    }
    out
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

/// `Σ |c_k| |z|^k`, the natural scale of `eval(coeffs, z)`.
pub fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p = (z - at) q + r`; returns `(q, r)`.
pub fn synthetic_division(coeffs: &[Complex64], at: Complex64) -> (Vec<Complex64>, Complex64) {
    if coeffs.is_empty() {
        return (Vec::new(), ZERO);
    }
    let n = coeffs.len();
    let mut q = vec![ZERO; n - 1];
    let mut acc = ZERO;
    for k in (0..n).rev() {
        acc = acc * at + coeffs[k];
        if k > 0 {
            q[k - 1] = acc;
        }
    }
    (q, acc)
}

/// Coefficients of `p(at + t)` in powers of `t`.
pub fn taylor(coeffs: &[Complex64], at: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(coeffs.len());
    let mut cur = coeffs.to_vec();
    while !cur.is_empty() {
        let (q, r) = synthetic_division(&cur, at);
        out.push(r);
        cur = q;
    }
    out
}

/// Order of vanishing of `p` at `at` and the value at `at` of the cofactor
/// `p / (z - at)^order`, by repeated synthetic division. A remainder counts
/// as zero when it is below `tol` times the evaluation scale.
pub fn vanishing_order(coeffs: &[Complex64], at: Complex64, tol: f64) -> Result<(usize, Complex64)> {
    let mut cur = trim(coeffs);
    if cur.is_empty() {
        return Err(Error::invalid("the zero polynomial has no vanishing order"));
    }
    let mut order = 0;
    loop {
        let scale = eval_scale(&cur, at);
        let (q, r) = synthetic_division(&cur, at);
        if q.is_empty() || r.norm() > tol * scale {
            return Ok((order, r));
        }
        order += 1;
        cur = q;
    }
}

/// All complex roots (with repetition) of a polynomial of positive degree.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trim(coeffs);
    if c.is_empty() {
        return Err(Error::invalid("the zero polynomial has no isolated roots"));
    }
    // Only exact zeros are split off; tiny nonzero constant terms carry
    // genuine small roots, and noise is left to the cluster validation.
    let low_zeros = c.iter().take_while(|z| **z == ZERO).count();
    let mut out = vec![ZERO; low_zeros];
    out.extend(companion_roots(&c[low_zeros..])?);
    Ok(out)
}

/// Eigenvalues of the companion matrix of a polynomial with nonzero
/// constant term, after rescaling `z = s u` so the constant term has unit
/// size relative to the leading one.
fn companion_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = c[d];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    if d == 1 {
        return Ok(vec![-monic[0]]);
    }
    let s = monic[0].norm().powf(1.0 / d as f64).clamp(1e-150, 1e150);
    // q(u) = p(s u) / s^d has coefficients monic[k] * s^{k-d}.
    let b: Vec<Complex64> = (0..d).map(|k| monic[k] * s.powi(k as i32 - d as i32)).collect();
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = ONE;
    }
    for i in 0..d {
        m[(i, d - 1)] = -b[i];
    }
    let eig = m
        .try_schur(f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .ok_or_else(|| Error::Numerical("companion eigenvalue iteration did not converge".into()))?;
    Ok(eig.iter().map(|u| u * s).collect())
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let dp = derivative(coeffs);
    for _ in 0..4 {
        let v = eval(coeffs, z);
        let d = eval(&dp, z);
        if d == ZERO {
            break;
        }
        let next = z - v / d;
        if eval(coeffs, next).norm() < v.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}

/// Accepts `center` as a root of order `k` when each Taylor coefficient of
/// order `< k` is negligible against the same coefficient of the
/// polynomial with absolute-value coefficients, a backward-error test that
/// does not mistake tiny simple roots for a multiple root.
fn is_multiple_root(coeffs: &[Complex64], center: Complex64, k: usize, tol: f64) -> bool {
    let t = taylor(coeffs, center);
    let abs: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect();
    let s = taylor(&abs, Complex64::new(center.norm(), 0.0));
    t.iter().zip(&s).take(k).all(|(z, sc)| z.norm() <= tol * sc.re)
}

/// Distinct roots with multiplicities.
pub fn clustered_roots(coeffs: &[Complex64], opts: &ClusterOptions) -> Result<Vec<RootCluster>> {
    let c = trim(coeffs);
    if c.is_empty() {
        return Err(Error::invalid("the zero polynomial has no isolated roots"));
    }
    let raw = roots(&c)?;
    let mut assigned = vec![false; raw.len()];
    let mut out = Vec::new();
    for i in 0..raw.len() {
        if assigned[i] {
            continue;
        }
        // Single-linkage component of the unassigned roots around raw[i].
        let mut component = vec![i];
        let mut grew = true;
        while grew {
            grew = false;
            for j in 0..raw.len() {
                if !assigned[j]
                    && !component.contains(&j)
                    && component.iter().any(|&m| (raw[m] - raw[j]).norm() < opts.cluster_tol)
                {
                    component.push(j);
                    grew = true;
                }
            }
        }
        let mean = |idx: &[usize]| idx.iter().map(|&j| raw[j]).sum::<Complex64>() / idx.len() as f64;
        // Nearby simple roots (y² = w³ for tiny w) are not a multiple root.
        if component.len() > 1 && !is_multiple_root(&c, mean(&component), component.len(), opts.validation_tol) {
            component = vec![i];
        }
        let mut others: Vec<usize> = (0..raw.len())
            .filter(|j| !assigned[*j] && !component.contains(j))
            .collect();
        others.sort_by(|&a, &b| {
            (raw[a] - raw[i])
                .norm()
                .partial_cmp(&(raw[b] - raw[i]).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut best = component.clone();
        let mut candidate = component.clone();
        for &j in &others {
            candidate.push(j);
            if is_multiple_root(&c, mean(&candidate), candidate.len(), opts.validation_tol) {
                best = candidate.clone();
            }
        }
        for &j in &best {
            assigned[j] = true;
        }
        let mut center = mean(&best);
        if best.len() == 1 {
            center = newton_polish(&c, center);
        }
        out.push(RootCluster {
            center,
            multiplicity: best.len(),
        });
    }
    out.sort_by(|a, b| {
        (a.center.re, a.center.im)
            .partial_cmp(&(b.center.re, b.center.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}
