//! Multivariate polynomials with complex coefficients, local multiplicities
//! and zero-finding for square systems in one or two variables.

mod multiplicity;
mod resultant;
mod solve;
pub mod univariate;

pub use multiplicity::{multiplicity, multiplicity_with, MultiplicityOptions};
pub use resultant::{resultant, resultant_with, ResultantMethod};
pub use solve::{solve_all, solve_system, solve_system_with, Polydisc, SolveOptions, Zero, ZeroSet};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, ZERO};

/// Relative magnitude below which coefficients are pruned on normalization.
pub const PRUNE_TOL: f64 = 1e-14;

/// A sparse polynomial `Σ c_e z^e` in `nvars` variables.
///
/// Exponent vectors are kept in a `BTreeMap`, so iteration order (and hence
/// every derived computation) is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MultiPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultiPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `z_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(e, ONE)
    }

    pub fn monomial(exponents: Vec<u32>, c: Complex64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::shape("exponent vector", nvars, e.len()));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::invalid("polynomial coefficient is not finite"));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// A univariate polynomial from coefficients listed by increasing degree.
    pub fn univariate(coeffs: &[Complex64]) -> Self {
        let mut p = Self::zero(1);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c);
        }
        p
    }

    /// A univariate polynomial with real coefficients by increasing degree.
    pub fn univariate_real(coeffs: &[f64]) -> Self {
        let cs: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        Self::univariate(&cs)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Complex64) {
        if c == ZERO {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == ZERO {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Complex64 {
        self.terms.get(e).copied().unwrap_or(ZERO)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Sum of coefficient magnitudes.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order of vanishing at 0).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Drops coefficients below `PRUNE_TOL · max|c|`.
    pub fn normalized(&self) -> Self {
        let cut = PRUNE_TOL * self.max_coefficient();
        MultiPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() >= cut && **c != ZERO)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    fn check_point(&self, point: &[Complex64]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::shape("evaluation point", self.nvars, point.len()));
        }
        Ok(())
    }

    /// Evaluation by nested Horner schemes, one variable at a time.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        self.check_point(point)?;
        let terms: Vec<(&[u32], Complex64)> =
            self.terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
        Ok(horner(&terms, point, 0))
    }

    /// `Σ |c_e| |z^e|`, a bound on the size of the summands in `eval`.
    pub fn eval_scale(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.norm()
                    * e.iter()
                        .zip(point)
                        .map(|(&k, z)| z.norm().powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Polynomial functional calculus on commuting square matrices.
    pub fn eval_matrix(&self, mats: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        if mats.len() != self.nvars {
            return Err(Error::shape("matrix tuple", self.nvars, mats.len()));
        }
        let dim = mats.first().map_or(0, |m| m.nrows());
        let mut powers: Vec<Vec<ComplexMatrix>> = vec![vec![ComplexMatrix::identity(dim, dim)]; self.nvars];
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (e, c) in &self.terms {
            let mut term = ComplexMatrix::identity(dim, dim) * *c;
            for (v, &k) in e.iter().enumerate() {
                while powers[v].len() <= k as usize {
                    let next = powers[v].last().unwrap() * &mats[v];
                    powers[v].push(next);
                }
                term *= &powers[v][k as usize];
            }
            out += term;
        }
        Ok(out)
    }

    pub fn differentiate(&self, var: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                p.add_term(e2, c * e[var] as f64);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, ONE);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes the polynomial `q` (same variable count) for `z_var`.
    pub fn substitute(&self, var: usize, q: &MultiPolynomial) -> Result<Self> {
        if q.nvars != self.nvars {
            return Err(Error::shape("substituted polynomial", self.nvars, q.nvars));
        }
        let mut powers = vec![Self::constant(self.nvars, ONE)];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            while powers.len() <= e[var] as usize {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[var] = 0;
            out = &out + &(&Self::monomial(rest, *c) * &powers[e[var] as usize]);
        }
        Ok(out)
    }

    /// `p(z + shift)`, expanded binomially.
    pub fn shift(&self, by: &[Complex64]) -> Result<Self> {
        self.check_point(by)?;
        let mut out = self.clone();
        for (v, &b) in by.iter().enumerate() {
            if b == ZERO {
                continue;
            }
            let moved = &Self::variable(self.nvars, v) + &Self::constant(self.nvars, b);
            out = out.substitute(v, &moved)?;
        }
        Ok(out)
    }

    /// Fixes `z_var = value`; the variable count is unchanged.
    pub fn restrict(&self, var: usize, value: Complex64) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            p.add_term(e2, c * value.powi(e[var] as i32));
        }
        p
    }

    /// Coefficients (by increasing power) in the variable `var`, when every
    /// other exponent is zero.
    pub fn univariate_coefficients(&self, var: usize) -> Result<Vec<Complex64>> {
        let mut out = vec![ZERO; self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(v, &k)| v != var && k > 0) {
                return Err(Error::invalid(format!(
                    "polynomial depends on variables other than z{}",
                    var + 1
                )));
            }
            out[e[var] as usize] += c;
        }
        Ok(out)
    }

    /// Coefficients of powers of `z_var`, each a polynomial in the remaining
    /// variables (with `z_var` exponent zero).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPolynomial> {
        let mut out = vec![Self::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            out[e[var] as usize].add_term(e2, *c);
        }
        out
    }

    /// Renames the variables into a polynomial with `nvars` variables,
    /// sending old variable `i` to new variable `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(e2, *c);
        }
        p
    }
}

fn horner(terms: &[(&[u32], Complex64)], point: &[Complex64], var: usize) -> Complex64 {
    if terms.is_empty() {
        return ZERO;
    }
    if var == point.len() {
        return terms.iter().map(|(_, c)| c).sum();
    }
    // Terms are sorted lexicographically, so equal powers of z_var are
    // contiguous and increasing.
    let mut groups: Vec<(u32, Complex64)> = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let k = terms[i].0[var];
        let mut j = i;
        while j < terms.len() && terms[j].0[var] == k {
            j += 1;
        }
        groups.push((k, horner(&terms[i..j], point, var + 1)));
        i = j;
    }
    let z = point[var];
    let mut acc = ZERO;
    let mut prev = groups.last().unwrap().0;
    for &(k, v) in groups.iter().rev() {
        acc = acc * z.powi((prev - k) as i32) + v;
        prev = k;
    }
    acc * z.powi(prev as i32)
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), *c);
        }
        p
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        self.scale(-ONE)
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = MultiPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for (v, &k) in e.iter().enumerate() {
                let name = if self.nvars == 1 {
                    "z".to_string()
                } else {
                    names.get(v).map_or(format!("z{}", v + 1), |s| s.to_string())
                };
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Convenience constructors for the two-variable plane `(x, y)`.
pub mod plane {
    use super::MultiPolynomial;
    use crate::linalg::c64;

    pub fn x() -> MultiPolynomial {
        MultiPolynomial::variable(2, 0)
    }

    pub fn y() -> MultiPolynomial {
        MultiPolynomial::variable(2, 1)
    }

    pub fn constant(re: f64) -> MultiPolynomial {
        MultiPolynomial::constant(2, c64(re, 0.0))
    }

    /// `Σ c · x^i y^j` from `(i, j, c)` triples with real `c`.
    pub fn from_real_terms(terms: &[(u32, u32, f64)]) -> MultiPolynomial {
        MultiPolynomial::from_terms(2, terms.iter().map(|&(i, j, c)| (vec![i, j], c64(c, 0.0))))
            .expect("two exponents per term")
    }
}
