//! Joint torsion of polynomial functions of a commuting tuple, through the
//! Koszul complex of the cutting functions.
//!
//! For a commuting tuple `A` on `H`, cutting polynomials `h = (h_1, …,
//! h_{n-1})` and two further polynomials `f, g`, the operators `f(A)`,
//! `g(A)` act diagonally on `K(h(A), H)`. When `K((h, f, g)(A), H)` is
//! acyclic the joint torsion is a quotient of multiplicative Lefschetz
//! numbers,
//!
//! ```text
//! JT(K(h(A)); f(A), g(A)) = M(K((h, g)(A)); f(A)) / M(K((h, f)(A)); g(A)),
//! ```
//!
//! and each Lefschetz number is a product over the joint spectrum,
//! `M(K((h, g)(A)); f(A)) = Π_{λ ∈ Z(h, g)} f(λ)^{m_λ(h, g) Ind(A - λ)}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fredholm;
use crate::koszul::{self, diagonal_action, koszul_complex_raw, CommutingTuple};
use crate::linalg::{ComplexMatrix, RankPolicy};
use crate::poly::{multiplicity, MultiPolynomial};
use crate::scalar::PolarScalar;

use super::joint::{joint_torsion, JointTorsionProblem};
use super::lefschetz;

fn eval_all(a: &CommutingTuple, polys: &[&MultiPolynomial]) -> Result<Vec<ComplexMatrix>> {
    polys
        .iter()
        .map(|p| {
            if p.nvars() != a.n() {
                return Err(Error::shape("polynomial variable count", a.n(), p.nvars()));
            }
            p.eval_matrix(a.matrices())
        })
        .collect()
}

fn check_cutting(a: &CommutingTuple, h: &[MultiPolynomial]) -> Result<()> {
    if h.len() + 1 != a.n() {
        return Err(Error::shape("cutting functions", a.n().saturating_sub(1), h.len()));
    }
    Ok(())
}

/// `M(K(h(A), H); f(A))`, the Lefschetz number of `f(A) ⊗ 1`.
fn koszul_lefschetz(
    a: &CommutingTuple,
    cutting: &[ComplexMatrix],
    f: &ComplexMatrix,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let x = koszul_complex_raw(cutting, a.dim());
    let map = diagonal_action(&x, f);
    Ok(lefschetz(&x, &map, policy)?.value)
}

/// `JT(K(h(A), H); f(A), g(A))` from the definition.
pub fn koszul_joint_torsion(
    a: &CommutingTuple,
    h: &[MultiPolynomial],
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let hs: Vec<&MultiPolynomial> = h.iter().collect();
    let cutting = eval_all(a, &hs)?;
    let fg = eval_all(a, &[f, g])?;
    joint_torsion_of_matrices(a, &cutting, &fg[0], &fg[1], policy)
}

fn joint_torsion_of_matrices(
    a: &CommutingTuple,
    cutting: &[ComplexMatrix],
    f: &ComplexMatrix,
    g: &ComplexMatrix,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let x = koszul_complex_raw(cutting, a.dim());
    let fm = diagonal_action(&x, f);
    let gm = diagonal_action(&x, g);
    let problem = JointTorsionProblem::new(x, fm, gm)?;
    joint_torsion(&problem, policy)
}

/// The joint torsion as a quotient of Lefschetz numbers; requires
/// `K((h, f, g)(A))` to be acyclic.
pub fn joint_torsion_nonsingular(
    a: &CommutingTuple,
    h: &[MultiPolynomial],
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    check_cutting(a, h)?;
    let hs: Vec<&MultiPolynomial> = h.iter().collect();
    let cutting = eval_all(a, &hs)?;
    let fg = eval_all(a, &[f, g])?;
    let mut all = cutting.clone();
    all.extend(fg.iter().cloned());
    if !fredholm::cohomology(&koszul_complex_raw(&all, a.dim()), policy).is_acyclic() {
        return Err(Error::Precondition(
            "Z(h, f, g) meets the joint spectrum; use the tame-symbol limit procedure".into(),
        ));
    }
    let mut with_g = cutting.clone();
    with_g.push(fg[1].clone());
    let mut with_f = cutting;
    with_f.push(fg[0].clone());
    let num = koszul_lefschetz(a, &with_g, &fg[0], policy)?;
    let den = koszul_lefschetz(a, &with_f, &fg[1], policy)?;
    Ok(num / den)
}

/// A spectral point of the tuple in the common zero set of `(h, k)`, with
/// the local multiplicity and the Koszul index.
#[derive(Clone, Debug)]
pub struct WeightedPoint {
    pub point: Vec<Complex64>,
    pub multiplicity: usize,
    pub index: i64,
}

/// Zero tolerance for `|p(λ)|` relative to its evaluation scale.
const ZERO_TOL: f64 = 1e-8;

fn weighted_zeros(
    a: &CommutingTuple,
    h: &[MultiPolynomial],
    k: &MultiPolynomial,
    policy: &RankPolicy,
) -> Result<Vec<WeightedPoint>> {
    let mut system: Vec<MultiPolynomial> = h.to_vec();
    system.push(k.clone());
    let mut out = Vec::new();
    for sp in koszul::joint_spectrum(a)? {
        let vanishes = system.iter().all(|p| {
            let v = p.eval(&sp.point).map(|z| z.norm()).unwrap_or(f64::INFINITY);
            v <= ZERO_TOL * p.eval_scale(&sp.point).max(1.0)
        });
        if !vanishes {
            continue;
        }
        out.push(WeightedPoint {
            multiplicity: multiplicity(&system, &sp.point)?,
            index: koszul::koszul_index(a, &sp.point, policy)?,
            point: sp.point,
        });
    }
    Ok(out)
}

/// `Π_{λ ∈ Z(h,g)} f(λ)^{m_λ(h,g) Ind(A-λ)} / Π_{μ ∈ Z(h,f)} g(μ)^{m_μ(h,f) Ind(A-μ)}`
/// over the joint spectrum.
pub fn explicit_nonsingular_product(
    a: &CommutingTuple,
    h: &[MultiPolynomial],
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    check_cutting(a, h)?;
    let factor = |points: Vec<WeightedPoint>, p: &MultiPolynomial| -> Result<PolarScalar> {
        let mut acc = PolarScalar::ONE;
        for w in points {
            let exponent = w.multiplicity as i64 * w.index;
            if exponent == 0 {
                continue;
            }
            let v = PolarScalar::from_complex(p.eval(&w.point)?).ok_or_else(|| {
                Error::Precondition("a zero of (h, g) is also a zero of f".into())
            })?;
            acc = acc * v.powi(exponent);
        }
        Ok(acc)
    };
    let num = factor(weighted_zeros(a, h, g, policy)?, f)?;
    let den = factor(weighted_zeros(a, h, f, policy)?, g)?;
    Ok(num / den)
}

/// `τ_{i,j} = JT(K(g_{⟨m⟩ \ {i,j}}(A), H); g_i(A), g_j(A))`, 0-based.
pub fn transition_number(
    a: &CommutingTuple,
    g: &[MultiPolynomial],
    i: usize,
    j: usize,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let m = g.len();
    if i >= m || j >= m {
        return Err(Error::invalid(format!("indices ({i}, {j}) out of range for {m} functions")));
    }
    let gs: Vec<&MultiPolynomial> = g.iter().collect();
    let mats = eval_all(a, &gs)?;
    let cutting: Vec<ComplexMatrix> = mats
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, m)| m.clone())
        .collect();
    joint_torsion_of_matrices(a, &cutting, &mats[i], &mats[j], policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, diag};

    fn line(coeffs: &[f64]) -> MultiPolynomial {
        MultiPolynomial::univariate_real(coeffs)
    }

    #[test]
    fn lefschetz_quotient_matches_definition() {
        let a = CommutingTuple::new(vec![diag(&[c64(1.0, 0.0), c64(0.0, 0.0)])]).unwrap();
        let (f, g) = (line(&[0.0, 1.0]), line(&[-2.0, 1.0]));
        let p = RankPolicy::default();
        let lq = joint_torsion_nonsingular(&a, &[], &f, &g, &p).unwrap();
        let jt = koszul_joint_torsion(&a, &[], &f, &g, &p).unwrap();
        let ex = explicit_nonsingular_product(&a, &[], &f, &g, &p).unwrap();
        assert!(lq.relative_distance(jt) < 1e-9);
        assert!(ex.relative_distance(jt) < 1e-9);
    }

    #[test]
    fn invertible_functions_give_one() {
        let a = CommutingTuple::new(vec![diag(&[c64(1.0, 0.0), c64(2.0, 0.0)])]).unwrap();
        let (f, g) = (line(&[5.0, 1.0]), line(&[-7.0, 1.0]));
        let v = joint_torsion_nonsingular(&a, &[], &f, &g, &RankPolicy::default()).unwrap();
        assert!(v.relative_distance(PolarScalar::ONE) < 1e-12);
    }

    #[test]
    fn common_zero_is_rejected() {
        let a = CommutingTuple::new(vec![diag(&[c64(0.0, 0.0), c64(2.0, 0.0)])]).unwrap();
        let f = line(&[0.0, 1.0]);
        assert!(matches!(
            joint_torsion_nonsingular(&a, &[], &f, &f, &RankPolicy::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn transition_antisymmetry() {
        let a = CommutingTuple::new(vec![diag(&[c64(1.0, 0.0), c64(0.0, 0.0), c64(3.0, 0.0)])]).unwrap();
        let g = [line(&[-1.0, 1.0]), line(&[0.5, 1.0]), line(&[0.0, 2.0])];
        let p = RankPolicy::default();
        let t01 = transition_number(&a, &g, 0, 1, &p).unwrap();
        let t10 = transition_number(&a, &g, 1, 0, &p).unwrap();
        assert!((t01 * t10).relative_distance(PolarScalar::ONE) < 1e-9);
    }
}
