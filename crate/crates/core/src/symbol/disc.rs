//! The Hardy-space model over the unit disc and the global product formula.
//!
//! For the unilateral shift `S` on `H^2`, the Taylor spectrum is the closed
//! disc, the essential spectrum the unit circle, and `Ind(S - λ) = 1` for
//! `|λ| < 1`. These facts are constants of the model. A polynomial symbol
//! `f` gives a Fredholm Toeplitz operator exactly when `f` has no zero on
//! the circle, and the joint torsion of `(T_f, T_g)` is the finite product
//! `Π_{|λ|<1} c_λ(f, g)^{Ind(S - λ)}` of tame symbols.
//!
//! The classical product formula for the same pair,
//! `Π_{|λ|<1} (-1)^{m_λ(f) m_λ(g)} lim_{z→λ} g(z)^{m_λ(f)} / f(z)^{m_λ(g)}`,
//! multiplies the reciprocals of these symbols, so it agrees with the joint
//! torsion of the swapped pair `(T_g, T_f)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::local::{tame_symbol_local, tame_symbol_on_line, LimitSchedule, SymbolProblem};
use super::regular::{local_factorization, tame_symbol_regular};
use crate::error::{Error, Result};
use crate::fredholm;
use crate::koszul::{self, CommutingTuple};
use crate::linalg::{RankPolicy, ZERO};
use crate::poly::univariate::{clustered_roots, derivative, eval, ClusterOptions};
use crate::poly::MultiPolynomial;
use crate::scalar::PolarScalar;

/// `Ind(S - λ)` for `|λ| < 1` in the Hardy-space model.
pub const DISC_INDEX: i64 = 1;

/// Zeros closer than this to the unit circle make a symbol non-Fredholm.
pub const CIRCLE_TOL: f64 = 1e-9;

/// Default node count of the winding-number quadrature.
pub const WINDING_NODES: usize = 4096;

fn univariate(name: &str, p: &MultiPolynomial) -> Result<Vec<Complex64>> {
    if p.nvars() != 1 {
        return Err(Error::shape(format!("univariate polynomial {name}"), 1, p.nvars()));
    }
    let c = p.univariate_coefficients(0)?;
    if c.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::invalid(format!("polynomial {name} is identically zero")));
    }
    Ok(c)
}

fn distinct_roots(c: &[Complex64]) -> Result<Vec<(Complex64, usize)>> {
    if c.iter().skip(1).all(|z| z.norm() == 0.0) {
        return Ok(Vec::new());
    }
    Ok(clustered_roots(c, &ClusterOptions::default())?
        .into_iter()
        .map(|r| (r.center, r.multiplicity))
        .collect())
}

/// A pair of polynomial symbols of Toeplitz operators on `H^2`.
#[derive(Clone, Debug)]
pub struct DiscModelProblem {
    f: MultiPolynomial,
    g: MultiPolynomial,
}

impl DiscModelProblem {
    /// Checks that neither symbol vanishes on the unit circle.
    pub fn new(f: MultiPolynomial, g: MultiPolynomial) -> Result<Self> {
        for (name, p) in [("f", &f), ("g", &g)] {
            let c = univariate(name, p)?;
            if let Some((r, _)) = distinct_roots(&c)?.into_iter().find(|(r, _)| (r.norm() - 1.0).abs() <= CIRCLE_TOL) {
                return Err(Error::Precondition(format!(
                    "{name} vanishes on the unit circle at {r:.9}; the Toeplitz operator is not Fredholm"
                )));
            }
        }
        Ok(DiscModelProblem { f, g })
    }

    pub fn f(&self) -> &MultiPolynomial {
        &self.f
    }

    pub fn g(&self) -> &MultiPolynomial {
        &self.g
    }

    /// The same model with the symbols exchanged.
    pub fn swapped(&self) -> Self {
        DiscModelProblem {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// Distinct zeros of `f` or `g` in the open disc.
    pub fn interior_zeros(&self) -> Result<Vec<Complex64>> {
        let mut out: Vec<Complex64> = Vec::new();
        for (name, p) in [("f", &self.f), ("g", &self.g)] {
            for (r, _) in distinct_roots(&univariate(name, p)?)? {
                if r.norm() < 1.0 && !out.iter().any(|s| (s - r).norm() < 1e-6) {
                    out.push(r);
                }
            }
        }
        out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal));
        Ok(out)
    }
}

/// The classical product formula for `(T_f, T_g)`.
pub fn carey_pincus(problem: &DiscModelProblem) -> Result<PolarScalar> {
    let mut acc = PolarScalar::ONE;
    for lambda in problem.interior_zeros()? {
        let (m, phi) = local_factorization(&problem.f, lambda)?;
        let (k, psi) = local_factorization(&problem.g, lambda)?;
        acc = acc * PolarScalar::sign(m * k % 2 == 1) * psi.powi(m as i64) / phi.powi(k as i64);
    }
    Ok(acc)
}

/// How each local symbol in a global product is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocalMethod {
    /// Closed form on a smooth curve.
    Regular,
    /// Perturbation limit on the plane model `h = y`.
    Limit(LimitSchedule),
}

/// One factor `c_λ^{Ind(A - λ)}` of a global product.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub point: Vec<Complex64>,
    pub index: i64,
    /// `None` when the index vanishes and the symbol is not needed.
    pub symbol: Option<PolarScalar>,
}

#[derive(Clone, Debug)]
pub struct GlobalProduct {
    pub value: PolarScalar,
    pub factors: Vec<LocalFactor>,
}

/// `JT(T_f, T_g) = Π_{|λ|<1} c_λ(f, g)` in the disc model.
pub fn joint_torsion_global_disc(problem: &DiscModelProblem, method: LocalMethod) -> Result<GlobalProduct> {
    let mut value = PolarScalar::ONE;
    let mut factors = Vec::new();
    for lambda in problem.interior_zeros()? {
        let symbol = match method {
            LocalMethod::Regular => tame_symbol_regular(&problem.f, &problem.g, lambda)?,
            LocalMethod::Limit(schedule) => tame_symbol_on_line(&problem.f, &problem.g, lambda, &schedule)?.value,
        };
        value = value * symbol.powi(DISC_INDEX);
        factors.push(LocalFactor {
            point: vec![lambda],
            index: DISC_INDEX,
            symbol: Some(symbol),
        });
    }
    Ok(GlobalProduct { value, factors })
}

/// `Π_λ c_λ(h; f, g)^{Ind(A - λ)}` over the joint spectrum of a commuting
/// matrix tuple, for `n = 1` (no cutting function, regular symbols) or
/// `n = 2` (one cutting polynomial, perturbation limit). On a
/// finite-dimensional space every Koszul index vanishes, so the symbols are
/// only evaluated where the index is nonzero.
pub fn joint_torsion_global_matrix(
    a: &CommutingTuple,
    h: &[MultiPolynomial],
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    schedule: &LimitSchedule,
    policy: &RankPolicy,
) -> Result<GlobalProduct> {
    let n = a.n();
    if n == 0 || n > 2 || h.len() + 1 != n {
        return Err(Error::Unsupported(format!(
            "global products need n = 1 without cutting functions or n = 2 with one (got n = {n}, {} cutting)",
            h.len()
        )));
    }
    for p in h.iter().chain([f, g]) {
        if p.nvars() != n {
            return Err(Error::shape("polynomial variable count", n, p.nvars()));
        }
    }
    let on_zero_set = |z: &[Complex64]| -> Result<bool> {
        let vanish = |p: &MultiPolynomial| -> Result<bool> {
            Ok(p.eval(z)?.norm() <= 1e-8 * p.eval_scale(z).max(1.0))
        };
        let mut cut = true;
        for p in h {
            cut &= vanish(p)?;
        }
        Ok(cut && (vanish(f)? || vanish(g)?))
    };
    let mut value = PolarScalar::ONE;
    let mut factors = Vec::new();
    for sp in koszul::joint_spectrum(a)? {
        if !on_zero_set(&sp.point)? {
            continue;
        }
        let index = fredholm::cohomology(koszul::build_koszul(&a.translate(&sp.point)?).complex(), policy).index();
        let symbol = if index == 0 {
            None
        } else if n == 1 {
            Some(tame_symbol_regular(f, g, sp.point[0])?)
        } else {
            let problem =
                SymbolProblem::with_admissible_radius(h[0].clone(), f.clone(), g.clone(), sp.point.clone())?;
            Some(tame_symbol_local(&problem, schedule)?.value)
        };
        if let Some(s) = symbol {
            value = value * s.powi(index);
        }
        factors.push(LocalFactor {
            point: sp.point,
            index,
            symbol,
        });
    }
    Ok(GlobalProduct { value, factors })
}

/// Winding data of a symbol along the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Winding {
    /// `(1/2πi) ∮ f'/f` by the trapezoidal rule.
    pub quadrature: f64,
    /// `-round(quadrature)`, the index of `T_f`.
    pub index: i64,
}

/// The index of `T_f` as minus the winding number of `f`.
pub fn noether_index(f: &MultiPolynomial) -> Result<i64> {
    noether_index_with(f, WINDING_NODES).map(|w| w.index)
}

pub fn noether_index_with(f: &MultiPolynomial, nodes: usize) -> Result<Winding> {
    let c = univariate("f", f)?;
    if nodes < 8 {
        return Err(Error::invalid("winding quadrature needs at least 8 nodes"));
    }
    let dc = derivative(&c);
    let mut sum = ZERO;
    for k in 0..nodes {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
        let v = eval(&c, z);
        if v.norm() == 0.0 {
            return Err(Error::NearCircleZero(f64::NAN));
        }
        sum += z * eval(&dc, z) / v;
    }
    let quadrature = (sum / nodes as f64).re;
    let rounded = quadrature.round();
    if (quadrature - rounded).abs() > 0.1 {
        return Err(Error::NearCircleZero(quadrature));
    }
    Ok(Winding {
        quadrature,
        index: -(rounded as i64),
    })
}

/// Roots of `f` in the open disc, with multiplicity, from companion-matrix
/// eigenvalues.
pub fn disc_root_count(f: &MultiPolynomial) -> Result<usize> {
    let c = univariate("f", f)?;
    Ok(distinct_roots(&c)?
        .into_iter()
        .filter(|(r, _)| r.norm() < 1.0)
        .map(|(_, m)| m)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, diag};

    fn p(coeffs: &[f64]) -> MultiPolynomial {
        MultiPolynomial::univariate_real(coeffs)
    }

    fn close(v: PolarScalar, re: f64) -> bool {
        (v.to_complex() - c64(re, 0.0)).norm() < 1e-9
    }

    #[test]
    fn carey_pincus_examples() {
        let z = p(&[0.0, 1.0]);
        assert!(close(carey_pincus(&DiscModelProblem::new(z.clone(), z.clone()).unwrap()).unwrap(), -1.0));
        let za = p(&[-0.3, 1.0]);
        assert!(close(carey_pincus(&DiscModelProblem::new(z, za).unwrap()).unwrap(), -1.0));
        let far = DiscModelProblem::new(p(&[-2.0, 1.0]), p(&[-3.0, 1.0])).unwrap();
        assert!(close(carey_pincus(&far).unwrap(), 1.0));
    }

    #[test]
    fn global_products() {
        let z = p(&[0.0, 1.0]);
        let one = p(&[1.0]);
        let za = p(&[-0.3, 1.0]);
        let jt = |f: &MultiPolynomial, g: &MultiPolynomial| {
            joint_torsion_global_disc(&DiscModelProblem::new(f.clone(), g.clone()).unwrap(), LocalMethod::Regular)
                .unwrap()
                .value
        };
        assert!(close(jt(&z, &one), 1.0));
        assert!(close(jt(&z, &z), -1.0));
        assert!(close(jt(&z, &za), -1.0));
    }

    #[test]
    fn carey_pincus_is_the_swapped_global_product() {
        let f = p(&[0.2, -1.0, 0.5, 1.0]);
        let g = p(&[-0.25, 0.0, 1.0]);
        let problem = DiscModelProblem::new(f, g).unwrap();
        let cp = carey_pincus(&problem).unwrap();
        let swapped = joint_torsion_global_disc(&problem.swapped(), LocalMethod::Regular).unwrap().value;
        let direct = joint_torsion_global_disc(&problem, LocalMethod::Regular).unwrap().value;
        assert!(cp.relative_distance(swapped) < 1e-9);
        assert!((cp * direct).relative_distance(PolarScalar::ONE) < 1e-9);
    }

    #[test]
    fn limit_method_matches_regular() {
        let problem = DiscModelProblem::new(p(&[0.0, 0.0, 1.0, 0.5]), p(&[-0.1, 1.0, 1.0])).unwrap();
        let r = joint_torsion_global_disc(&problem, LocalMethod::Regular).unwrap().value;
        let l = joint_torsion_global_disc(&problem, LocalMethod::Limit(LimitSchedule::default())).unwrap().value;
        assert!(r.relative_distance(l) < 1e-6, "{r} vs {l}");
    }

    #[test]
    fn circle_zero_is_rejected() {
        assert!(matches!(
            DiscModelProblem::new(p(&[-1.0, 1.0]), p(&[1.0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn winding_numbers() {
        assert_eq!(noether_index(&p(&[0.0, 1.0])).unwrap(), -1);
        assert_eq!(noether_index(&p(&[0.0, 0.0, 0.0, 1.0])).unwrap(), -3);
        assert_eq!(noether_index(&p(&[-2.0, 1.0])).unwrap(), 0);
        let f = p(&[0.1, -0.5, 1.0, 2.0]);
        assert_eq!(noether_index(&f).unwrap(), -(disc_root_count(&f).unwrap() as i64));
    }

    #[test]
    fn matrix_model_product_is_trivial() {
        let a = CommutingTuple::new(vec![diag(&[c64(0.0, 0.0), c64(0.5, 0.0)])]).unwrap();
        let gp = joint_torsion_global_matrix(&a, &[], &p(&[0.0, 1.0]), &p(&[-0.5, 1.0]), &LimitSchedule::default(), &RankPolicy::default())
            .unwrap();
        assert_eq!(gp.factors.len(), 2);
        assert!(gp.factors.iter().all(|f| f.index == 0));
        assert!(close(gp.value, 1.0));
    }
}
