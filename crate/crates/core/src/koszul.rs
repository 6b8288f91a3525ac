//! Exterior-algebra combinatorics and Koszul complexes of commuting
//! matrix tuples.
//!
//! `K^k(A, H) = H ⊗ Λ^{-k}(C^n)` for `-n ≤ k ≤ 0`, with differential
//! `d_A = Σ_j A_j ⊗ ε_j^*` built from interior multiplications
//! `ε_j^*(e_I) = (-1)^{m-1} e_{I \ j}` when `j` is the `m`-th element of `I`.
//! Basis vectors are ordered with the module index varying fastest and the
//! subsets `I` in lexicographic order, so `H ⊗ e_I` occupies the rows
//! `pos(I) · dim .. (pos(I) + 1) · dim`.
//!
//! For `B` commuting with `A`, the cone of `B ⊗ 1 : K(A) -> K(A)` coincides
//! with `K((B, A))` on the nose. Putting `B` first, the subsets of
//! `{1, …, n+1}` of size `m` that contain `1` come first in lexicographic
//! order and are in order-preserving bijection with the `(m-1)`-subsets of
//! the generators of `A`; those without `1` follow. Removing `1` from
//! `{1} ∪ J` has sign `+1` and contributes `B`, while removing a later
//! generator picks up one extra sign, which is the `-d` of the cone. So the
//! degreewise isomorphism is the identity matrix, with no permutation and
//! no signs.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fredholm::{self, CochainComplex, CochainMap};
use crate::linalg::{self, c64, ComplexMatrix, RankPolicy};

/// Default relative tolerance of the commutation check.
pub const DEFAULT_COMMUTE_TOL: f64 = 1e-10;

/// A basis vector `e_I` of `Λ(C^n)`, with `I` strictly increasing and
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExteriorBasisIndex {
    n: usize,
    subset: Vec<usize>,
}

impl ExteriorBasisIndex {
    pub fn new(n: usize, subset: Vec<usize>) -> Result<Self> {
        if subset.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::invalid(format!("subset {subset:?} leaves 1..={n}")));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("subset {subset:?} is not strictly increasing")));
        }
        Ok(ExteriorBasisIndex { n, subset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn degree(&self) -> usize {
        self.subset.len()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The `k`-subsets of `{1, …, n}` in lexicographic order.
pub fn basis(n: usize, k: usize) -> Vec<ExteriorBasisIndex> {
    fn extend(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<ExteriorBasisIndex>) {
        if cur.len() == k {
            out.push(ExteriorBasisIndex { n, subset: cur.clone() });
            return;
        }
        for i in from..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            extend(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    extend(n, k, 1, &mut Vec::new(), &mut out);
    out
}

/// `ε_j^*(e_I)`: `None` when `j ∉ I`, else the sign and `I \ {j}`.
pub fn interior_mult(j: usize, index: &ExteriorBasisIndex) -> Result<Option<(i8, ExteriorBasisIndex)>> {
    if j == 0 || j > index.n {
        return Err(Error::invalid(format!("generator {j} outside 1..={}", index.n)));
    }
    Ok(index.subset.iter().position(|&i| i == j).map(|pos| {
        let mut rest = index.subset.clone();
        rest.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        (sign, ExteriorBasisIndex { n: index.n, subset: rest })
    }))
}

/// Commuting square matrices acting on `C^dim`.
#[derive(Clone, Debug)]
pub struct CommutingTuple {
    matrices: Vec<ComplexMatrix>,
    dim: usize,
    commute_tol: f64,
}

impl CommutingTuple {
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(matrices, DEFAULT_COMMUTE_TOL)
    }

    /// Checks `‖A_i A_j - A_j A_i‖ ≤ tol (1 + ‖A_i‖ ‖A_j‖)` for all pairs.
    pub fn with_tolerance(matrices: Vec<ComplexMatrix>, commute_tol: f64) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::invalid("a commuting tuple needs at least one matrix"));
        }
        if !(commute_tol >= 0.0) {
            return Err(Error::invalid("commute_tol must be nonnegative"));
        }
        let dim = matrices[0].nrows();
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::shape(
                    format!("matrix {}", i + 1),
                    format!("{dim}x{dim}"),
                    format!("{}x{}", m.nrows(), m.ncols()),
                ));
            }
        }
        check_commuting(&matrices, commute_tol)?;
        Ok(CommutingTuple {
            matrices,
            dim,
            commute_tol,
        })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn commute_tol(&self) -> f64 {
        self.commute_tol
    }

    /// `(B, A_1, …, A_n)`, checking that `B` commutes with every `A_j`.
    pub fn prepend(&self, b: ComplexMatrix) -> Result<Self> {
        let mut mats = vec![b];
        mats.extend(self.matrices.iter().cloned());
        Self::with_tolerance(mats, self.commute_tol)
    }

    /// `A - λ`.
    pub fn translate(&self, lambda: &[Complex64]) -> Result<Self> {
        if lambda.len() != self.n() {
            return Err(Error::shape("spectral point", self.n(), lambda.len()));
        }
        let id = ComplexMatrix::identity(self.dim, self.dim);
        Ok(CommutingTuple {
            matrices: self
                .matrices
                .iter()
                .zip(lambda)
                .map(|(a, &l)| a - &id * l)
                .collect(),
            dim: self.dim,
            commute_tol: self.commute_tol,
        })
    }
}

fn check_commuting(matrices: &[ComplexMatrix], tol: f64) -> Result<()> {
    let norms: Vec<f64> = matrices.iter().map(linalg::op_norm).collect();
    for i in 0..matrices.len() {
        for j in (i + 1)..matrices.len() {
            let c = &matrices[i] * &matrices[j] - &matrices[j] * &matrices[i];
            let defect = linalg::op_norm(&c);
            if defect > tol * (1.0 + norms[i] * norms[j]) {
                return Err(Error::NonCommuting {
                    i: i + 1,
                    j: j + 1,
                    defect,
                });
            }
        }
    }
    Ok(())
}

/// A Koszul complex together with its generator count and module dimension.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    complex: CochainComplex,
    n: usize,
    dim: usize,
}

impl KoszulComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CochainComplex {
        self.complex
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of `K^k`, namely `dim · C(n, -k)`.
    pub fn space_dim(&self, k: i32) -> usize {
        if k > 0 || -k > self.n as i32 {
            0
        } else {
            self.dim * binomial(self.n, (-k) as usize)
        }
    }
}

/// The Koszul complex of any list of `dim x dim` matrices; the empty list
/// gives `H` in degree zero. Commutation is not checked.
pub(crate) fn koszul_complex_raw(mats: &[ComplexMatrix], dim: usize) -> CochainComplex {
    let n = mats.len();
    if n == 0 {
        return CochainComplex::concentrated(0, dim);
    }
    let bases: Vec<Vec<ExteriorBasisIndex>> = (0..=n).map(|m| basis(n, m)).collect();
    let positions: Vec<HashMap<Vec<usize>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(p, e)| (e.subset.clone(), p)).collect())
        .collect();
    // Degree -m maps Λ^m to Λ^{m-1}; list them from degree -n upwards.
    let mut differentials = Vec::with_capacity(n);
    for m in (1..=n).rev() {
        let mut d = ComplexMatrix::zeros(dim * bases[m - 1].len(), dim * bases[m].len());
        for (p, idx) in bases[m].iter().enumerate() {
            for &j in &idx.subset {
                let (sign, rest) = interior_mult(j, idx).expect("valid generator").expect("j in I");
                let q = positions[m - 1][&rest.subset];
                let a = &mats[j - 1];
                let mut block = d.view_mut((q * dim, p * dim), (dim, dim));
                if sign > 0 {
                    block += a;
                } else {
                    block -= a;
                }
            }
        }
        differentials.push(d);
    }
    let dims = (0..=n).rev().map(|m| dim * bases[m].len()).collect();
    CochainComplex::new(-(n as i32), dims, differentials).expect("Koszul shapes are consistent")
}

/// `K(A, H)`.
pub fn build_koszul(a: &CommutingTuple) -> KoszulComplex {
    KoszulComplex {
        complex: koszul_complex_raw(&a.matrices, a.dim),
        n: a.n(),
        dim: a.dim,
    }
}

/// `B ⊗ 1` on a complex whose degree-`k` space is a direct sum of copies
/// of `H`.
pub(crate) fn diagonal_action(x: &CochainComplex, b: &ComplexMatrix) -> CochainMap {
    let dim = b.nrows();
    CochainMap::from_fn(x, |k| {
        let copies = if dim == 0 { 0 } else { x.dim(k) / dim };
        linalg::repeat_diag(b, copies)
    })
}

/// `K(B) = B ⊗ 1 : K(A) -> K(A)`, after checking that `B` commutes with `A`.
pub fn koszul_of_map(a: &CommutingTuple, b: &ComplexMatrix) -> Result<CochainMap> {
    if b.nrows() != a.dim || b.ncols() != a.dim {
        return Err(Error::shape(
            "module map",
            format!("{0}x{0}", a.dim),
            format!("{}x{}", b.nrows(), b.ncols()),
        ));
    }
    a.prepend(b.clone())?;
    Ok(diagonal_action(&build_koszul(a).complex, b))
}

/// The cone of `K(B)` on `K(A)`, the complex `K((B, A))`, and the degreewise
/// isomorphism between them, checked to be a cochain isomorphism.
#[derive(Clone, Debug)]
pub struct ConeKoszulIsomorphism {
    pub cone: CochainComplex,
    pub koszul: CochainComplex,
    pub isomorphism: CochainMap,
}

pub fn cone_koszul_isomorphism(a: &CommutingTuple, b: &ComplexMatrix) -> Result<ConeKoszulIsomorphism> {
    let kb = koszul_of_map(a, b)?;
    let ka = build_koszul(a).complex;
    let cone = fredholm::mapping_cone(&ka, &ka, &kb)?.cone;
    let koszul = build_koszul(&a.prepend(b.clone())?).complex;
    if cone.dims() != koszul.dims() || cone.start() != koszul.start() {
        return Err(Error::Numerical("cone and Koszul complex have different shapes".into()));
    }
    let isomorphism = CochainMap::from_fn(&cone, |k| {
        let d = cone.dim(k);
        ComplexMatrix::identity(d, d)
    });
    isomorphism.validate(&cone, &koszul, fredholm::DEFAULT_CHAIN_TOL)?;
    Ok(ConeKoszulIsomorphism {
        cone,
        koszul,
        isomorphism,
    })
}

/// A point of the joint spectrum with its algebraic multiplicity, the
/// dimension of the joint generalized eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPoint {
    pub point: Vec<Complex64>,
    pub multiplicity: usize,
}

/// Joint eigenvalues of a commuting tuple.
///
/// A generic combination `L = Σ c_j A_j` has the joint generalized
/// eigenspaces as its own. Each eigenvalue cluster of `L` gets its Riesz
/// projector `P` by trapezoidal quadrature of the resolvent on a circle
/// separating it from the rest, and `λ_j = tr(A_j P) / tr(P)`.
pub fn joint_spectrum(a: &CommutingTuple) -> Result<Vec<SpectralPoint>> {
    let dim = a.dim;
    if dim == 0 {
        return Ok(Vec::new());
    }
    let scale = a.matrices.iter().map(linalg::op_norm).fold(0.0, f64::max).max(1.0);
    // Fixed irrational-looking weights keep the combination generic and
    // the result deterministic.
    let weights: Vec<Complex64> = (0..a.n())
        .map(|j| Complex64::from_polar(1.0 + 0.37 * j as f64, 0.61 + 1.13 * j as f64))
        .collect();
    let mut l = ComplexMatrix::zeros(dim, dim);
    for (m, w) in a.matrices.iter().zip(&weights) {
        l += m * *w;
    }
    let eig = l
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .and_then(|s| s.eigenvalues())
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    // Eigenvalues of a Jordan block of size k spread like eps^{1/k}.
    let tol = 1e-3 * scale * (1.0 + 0.37 * a.n() as f64);
    let mut centers: Vec<(Complex64, usize)> = Vec::new();
    for &e in eig.iter() {
        match centers.iter_mut().find(|(c, m)| (*c / *m as f64 - e).norm() < tol) {
            Some((c, m)) => {
                *c += e;
                *m += 1;
            }
            None => centers.push((e, 1)),
        }
    }
    let centers: Vec<Complex64> = centers.iter().map(|(c, m)| c / *m as f64).collect();
    let id = ComplexMatrix::identity(dim, dim);
    let mut out = Vec::new();
    for (i, &mu) in centers.iter().enumerate() {
        let gap = centers
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| (c - mu).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = if gap.is_finite() { gap / 2.0 } else { scale };
        let nodes = 128;
        let mut p = ComplexMatrix::zeros(dim, dim);
        for k in 0..nodes {
            let t = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
            let z = mu + t * radius;
            let res = (&id * z - &l)
                .lu()
                .try_inverse()
                .ok_or_else(|| Error::Numerical("resolvent is singular on the contour".into()))?;
            p += res * (t * radius / nodes as f64);
        }
        let tr = p.trace();
        let multiplicity = tr.re.round();
        if multiplicity < 0.5 || (tr - c64(multiplicity, 0.0)).norm() > 1e-3 {
            return Err(Error::Numerical(format!(
                "spectral projector trace {tr:.6} is not a positive integer"
            )));
        }
        let point = a
            .matrices
            .iter()
            .map(|m| (m * &p).trace() / tr)
            .collect();
        out.push(SpectralPoint {
            point,
            multiplicity: multiplicity as usize,
        });
    }
    out.sort_by(|x, y| {
        let key = |s: &SpectralPoint| s.point.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>();
        key(x).partial_cmp(&key(y)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// `Ind(A - λ)`, the Euler characteristic of the cohomology of
/// `K(A - λ, H)`.
pub fn koszul_index(a: &CommutingTuple, lambda: &[Complex64], policy: &RankPolicy) -> Result<i64> {
    let shifted = a.translate(lambda)?;
    Ok(fredholm::cohomology(&build_koszul(&shifted).complex, policy).index())
}

/// Whether `λ` lies in the joint spectrum, that is `K(A - λ)` is not acyclic.
pub fn in_spectrum(a: &CommutingTuple, lambda: &[Complex64], policy: &RankPolicy) -> Result<bool> {
    let shifted = a.translate(lambda)?;
    Ok(!fredholm::cohomology(&build_koszul(&shifted).complex, policy).is_acyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, real_matrix, ZERO};

    fn idx(n: usize, s: &[usize]) -> ExteriorBasisIndex {
        ExteriorBasisIndex::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn interior_signs() {
        assert_eq!(interior_mult(1, &idx(2, &[1, 2])).unwrap(), Some((1, idx(2, &[2]))));
        assert_eq!(interior_mult(2, &idx(2, &[1, 2])).unwrap(), Some((-1, idx(2, &[1]))));
        assert_eq!(interior_mult(1, &idx(2, &[2])).unwrap(), None);
        assert!(interior_mult(3, &idx(2, &[2])).is_err());
    }

    #[test]
    fn basis_sizes_and_order() {
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(basis(n, k).len(), binomial(n, k));
            }
        }
        let b: Vec<Vec<usize>> = basis(3, 2).into_iter().map(|e| e.subset).collect();
        assert_eq!(b, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn single_generator() {
        let a = CommutingTuple::new(vec![real_matrix(&[&[2.0]])]).unwrap();
        let k = build_koszul(&a);
        assert_eq!(k.complex().start(), -1);
        assert_eq!(k.complex().differential(-1), real_matrix(&[&[2.0]]));
    }

    #[test]
    fn zero_pair_on_a_line() {
        let z = ComplexMatrix::zeros(1, 1);
        let k = build_koszul(&CommutingTuple::new(vec![z.clone(), z]).unwrap());
        assert_eq!(k.complex().dims(), &[1, 2, 1]);
        assert_eq!(k.complex().euler_characteristic(), 0);
    }

    #[test]
    fn two_diagonal_generators() {
        let a1 = diag(&[c64(1.0, 0.0), ZERO]);
        let a2 = diag(&[ZERO, c64(3.0, 0.0)]);
        let k = build_koszul(&CommutingTuple::new(vec![a1.clone(), a2.clone()]).unwrap());
        let d = k.complex().differential(-2);
        // e_{12} ↦ A_1 ⊗ e_2 - A_2 ⊗ e_1
        let expected = linalg::vstack(&[&(-&a2), &a1], 2);
        assert_eq!(d, expected);
        assert_eq!(k.complex().d_squared_defect(), 0.0);
        let h = fredholm::cohomology(k.complex(), &RankPolicy::default());
        assert!(h.is_acyclic());
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let a = real_matrix(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let b = real_matrix(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(matches!(
            CommutingTuple::new(vec![a, b]),
            Err(Error::NonCommuting { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn cone_is_koszul_of_extended_tuple() {
        let a1 = diag(&[c64(1.0, 0.0), ZERO]);
        let a2 = diag(&[ZERO, c64(3.0, 0.0)]);
        let a = CommutingTuple::new(vec![a1.clone(), a2]).unwrap();
        let iso = cone_koszul_isomorphism(&a, &a1).unwrap();
        assert_eq!(iso.cone.dims(), &[2, 6, 6, 2]);
        let one = CommutingTuple::new(vec![ComplexMatrix::zeros(1, 1)]).unwrap();
        let map = koszul_of_map(&one, &real_matrix(&[&[5.0]])).unwrap();
        assert_eq!(map.component(-1, 1, 1), real_matrix(&[&[5.0]]));
        assert_eq!(map.component(0, 1, 1), real_matrix(&[&[5.0]]));
    }

    #[test]
    fn spectrum_of_triangular_pair() {
        let a1 = real_matrix(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let a2 = real_matrix(&[&[-1.0, 3.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 0.5]]);
        let a = CommutingTuple::new(vec![a1, a2]).unwrap();
        let sp = joint_spectrum(&a).unwrap();
        assert_eq!(sp.len(), 2);
        assert_eq!(sp[0].multiplicity, 2);
        assert!((sp[0].point[0] - c64(1.0, 0.0)).norm() < 1e-10);
        assert!((sp[0].point[1] - c64(-1.0, 0.0)).norm() < 1e-10);
        assert!((sp[1].point[1] - c64(0.5, 0.0)).norm() < 1e-10);
        let p = RankPolicy::default();
        assert!(in_spectrum(&a, &[c64(2.0, 0.0), c64(0.5, 0.0)], &p).unwrap());
        assert!(!in_spectrum(&a, &[c64(2.0, 0.0), c64(1.0, 0.0)], &p).unwrap());
        assert_eq!(koszul_index(&a, &[c64(1.0, 0.0), c64(-1.0, 0.0)], &p).unwrap(), 0);
    }
}
