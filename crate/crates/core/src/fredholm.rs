//! Finite cochain complexes over C: cohomology with explicit harmonic
//! representatives, shifts, mapping cones and the six-term sequence of a
//! cochain map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, ComplexMatrix, RankPolicy};
use crate::torsion::SixTermSequence;

/// Relative tolerance for chain-map and commutation defects.
pub const DEFAULT_CHAIN_TOL: f64 = 1e-9;

/// A finitely supported cochain complex `X^start -> X^{start+1} -> ...`.
///
/// `differentials[i]` is `d^{start+i}` of shape `dims[i+1] x dims[i]`.
/// Degrees outside the stored range carry the zero space.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    start: i32,
    dims: Vec<usize>,
    differentials: Vec<ComplexMatrix>,
}

impl CochainComplex {
    /// Validates shapes and trims zero spaces at both ends.
    pub fn new(start: i32, dims: Vec<usize>, differentials: Vec<ComplexMatrix>) -> Result<Self> {
        let expected = dims.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::shape(
                "differential count",
                expected,
                differentials.len(),
            ));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::shape(
                    format!("differential d^{}", start + i as i32),
                    format!("{}x{}", dims[i + 1], dims[i]),
                    format!("{}x{}", d.nrows(), d.ncols()),
                ));
            }
        }
        let mut out = CochainComplex {
            start,
            dims,
            differentials,
        };
        out.trim();
        Ok(out)
    }

    pub fn zero() -> Self {
        CochainComplex {
            start: 0,
            dims: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// A single space in one degree.
    pub fn concentrated(degree: i32, dim: usize) -> Self {
        let mut out = CochainComplex {
            start: degree,
            dims: vec![dim],
            differentials: Vec::new(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.differentials.pop();
        }
        let lead = self.dims.iter().take_while(|&&d| d == 0).count();
        if lead > 0 {
            self.dims.drain(..lead);
            let drop = lead.min(self.differentials.len());
            self.differentials.drain(..drop);
            self.start += lead as i32;
        }
        if self.dims.is_empty() {
            self.start = 0;
            self.differentials.clear();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Lowest degree with a nonzero space (0 for the zero complex).
    pub fn start(&self) -> i32 {
        self.start
    }

    /// One past the highest degree with a nonzero space.
    pub fn end(&self) -> i32 {
        self.start + self.dims.len() as i32
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.start..self.end()
    }

    pub fn dim(&self, k: i32) -> usize {
        if k < self.start || k >= self.end() {
            0
        } else {
            self.dims[(k - self.start) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d^k : X^k -> X^{k+1}`, zero outside the stored range.
    pub fn differential(&self, k: i32) -> ComplexMatrix {
        let i = k - self.start;
        if i >= 0 && (i as usize) < self.differentials.len() {
            self.differentials[i as usize].clone()
        } else {
            ComplexMatrix::zeros(self.dim(k + 1), self.dim(k))
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }

    /// Largest entry of any `d^{k+1} d^k`.
    pub fn d_squared_defect(&self) -> f64 {
        self.degrees()
            .map(|k| max_abs(&(self.differential(k + 1) * self.differential(k))))
            .fold(0.0, f64::max)
    }

    pub fn max_differential_norm(&self) -> f64 {
        self.differentials.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// `X[1]`: degrees lowered by one, differentials negated.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        CochainComplex {
            start: self.start - 1,
            dims: self.dims.clone(),
            differentials: self.differentials.iter().map(|d| -d).collect(),
        }
    }

    /// Applies a degreewise change of basis `d^k -> u^{k+1} d^k (u^k)^{-1}`
    /// for unitary `u^k`.
    pub fn conjugate_unitary(&self, u: &BTreeMap<i32, ComplexMatrix>) -> Self {
        let get = |k: i32| {
            u.get(&k)
                .cloned()
                .unwrap_or_else(|| ComplexMatrix::identity(self.dim(k), self.dim(k)))
        };
        CochainComplex {
            start: self.start,
            dims: self.dims.clone(),
            differentials: self
                .degrees()
                .take(self.differentials.len())
                .map(|k| get(k + 1) * self.differential(k) * get(k).adjoint())
                .collect(),
        }
    }
}

/// Degreewise matrices `f^k : X^k -> Y^k`; absent degrees are zero maps.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CochainMap {
    components: BTreeMap<i32, ComplexMatrix>,
}

impl CochainMap {
    pub fn new(components: BTreeMap<i32, ComplexMatrix>) -> Self {
        CochainMap { components }
    }

    /// Components listed from degree `start` upwards.
    pub fn from_components(start: i32, mats: Vec<ComplexMatrix>) -> Self {
        CochainMap {
            components: mats
                .into_iter()
                .enumerate()
                .map(|(i, m)| (start + i as i32, m))
                .collect(),
        }
    }

    /// One component per degree of `x`, produced by `make(k)`.
    pub fn from_fn(x: &CochainComplex, mut make: impl FnMut(i32) -> ComplexMatrix) -> Self {
        CochainMap {
            components: x.degrees().map(|k| (k, make(k))).collect(),
        }
    }

    pub fn identity(x: &CochainComplex) -> Self {
        Self::from_fn(x, |k| ComplexMatrix::identity(x.dim(k), x.dim(k)))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &BTreeMap<i32, ComplexMatrix> {
        &self.components
    }

    /// The degree-`k` matrix with the given shape (zero when absent).
    pub fn component(&self, k: i32, rows: usize, cols: usize) -> ComplexMatrix {
        match self.components.get(&k) {
            Some(m) if m.shape() == (rows, cols) => m.clone(),
            _ => ComplexMatrix::zeros(rows, cols),
        }
    }

    pub fn between(&self, k: i32, x: &CochainComplex, y: &CochainComplex) -> ComplexMatrix {
        self.component(k, y.dim(k), x.dim(k))
    }

    /// Checks shapes and `f d_X = d_Y f` up to a relative tolerance.
    pub fn validate(&self, x: &CochainComplex, y: &CochainComplex, tol: f64) -> Result<()> {
        for (&k, m) in &self.components {
            let want = (y.dim(k), x.dim(k));
            if m.shape() != want && !(m.is_empty() && want.0 * want.1 == 0) {
                return Err(Error::shape(
                    format!("cochain map component in degree {k}"),
                    format!("{}x{}", want.0, want.1),
                    format!("{}x{}", m.nrows(), m.ncols()),
                ));
            }
        }
        let fnorm = self.components.values().map(max_abs).fold(0.0, f64::max);
        let dnorm = x.max_differential_norm().max(y.max_differential_norm());
        let scale = 1.0 + fnorm * dnorm;
        let lo = x.start().min(y.start()) - 1;
        let hi = x.end().max(y.end());
        let mut worst = (lo, 0.0);
        for k in lo..=hi {
            let lhs = self.between(k + 1, x, y) * x.differential(k);
            let rhs = y.differential(k) * self.between(k, x, y);
            let defect = max_abs(&(lhs - rhs));
            if defect > worst.1 {
                worst = (k, defect);
            }
        }
        if worst.1 > tol * scale {
            return Err(Error::NotChainMap {
                degree: worst.0,
                defect: worst.1,
            });
        }
        Ok(())
    }

    /// Checks `f^k g^k = g^k f^k` for two endomorphisms of `x`.
    pub fn check_commutes(&self, other: &CochainMap, x: &CochainComplex, tol: f64) -> Result<()> {
        for k in x.degrees() {
            let f = self.between(k, x, x);
            let g = other.between(k, x, x);
            let defect = max_abs(&(&f * &g - &g * &f));
            let scale = 1.0 + max_abs(&f) * max_abs(&g);
            if defect > tol * scale {
                return Err(Error::MapsDoNotCommute { degree: k, defect });
            }
        }
        Ok(())
    }

    /// Degreewise `u_Y f u_X^*` to follow a unitary change of basis.
    pub fn conjugate_unitary(
        &self,
        x: &CochainComplex,
        y: &CochainComplex,
        ux: &BTreeMap<i32, ComplexMatrix>,
        uy: &BTreeMap<i32, ComplexMatrix>,
    ) -> Self {
        let get = |u: &BTreeMap<i32, ComplexMatrix>, k: i32, n: usize| {
            u.get(&k).cloned().unwrap_or_else(|| ComplexMatrix::identity(n, n))
        };
        CochainMap {
            components: self
                .components
                .iter()
                .map(|(&k, m)| {
                    (
                        k,
                        get(uy, k, y.dim(k)) * m * get(ux, k, x.dim(k)).adjoint(),
                    )
                })
                .collect(),
        }
    }

    /// Degreewise sum `self + t * other` of two maps `x -> y`.
    pub fn add_scaled(
        &self,
        other: &CochainMap,
        t: num_complex::Complex64,
        x: &CochainComplex,
        y: &CochainComplex,
    ) -> Self {
        CochainMap::new(
            x.degrees()
                .map(|k| (k, self.between(k, x, y) + other.between(k, x, y) * t))
                .collect(),
        )
    }
}

/// The cone `C_f` of `f : X -> Y` together with `i : Y -> C_f` and
/// `p : C_f -> X[1]`.
///
/// `C_f^k = X^{k+1} ⊕ Y^k` (in this block order) with differential
/// `[[-d_X^{k+1}, 0], [f^{k+1}, d_Y^k]]`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub cone: CochainComplex,
    pub inclusion: CochainMap,
    pub projection: CochainMap,
}

fn cone_range(x: &CochainComplex, y: &CochainComplex) -> Option<(i32, i32)> {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => None,
        (false, true) => Some((x.start() - 1, x.end() - 1)),
        (true, false) => Some((y.start(), y.end())),
        (false, false) => Some((
            (x.start() - 1).min(y.start()),
            (x.end() - 1).max(y.end()),
        )),
    }
}

/// Builds the cone without checking the chain-map property.
pub fn mapping_cone_unchecked(x: &CochainComplex, y: &CochainComplex, f: &CochainMap) -> MappingCone {
    let Some((lo, hi)) = cone_range(x, y) else {
        return MappingCone {
            cone: CochainComplex::zero(),
            inclusion: CochainMap::zero(),
            projection: CochainMap::zero(),
        };
    };
    let dims: Vec<usize> = (lo..hi).map(|k| x.dim(k + 1) + y.dim(k)).collect();
    let mut diffs = Vec::new();
    for k in lo..hi - 1 {
        let (a1, b1) = (x.dim(k + 1), y.dim(k));
        let (a2, b2) = (x.dim(k + 2), y.dim(k + 1));
        let mut m = ComplexMatrix::zeros(a2 + b2, a1 + b1);
        m.view_mut((0, 0), (a2, a1)).copy_from(&(-x.differential(k + 1)));
        m.view_mut((a2, 0), (b2, a1)).copy_from(&f.between(k + 1, x, y));
        m.view_mut((a2, a1), (b2, b1)).copy_from(&y.differential(k));
        diffs.push(m);
    }
    let mut inclusion = BTreeMap::new();
    let mut projection = BTreeMap::new();
    for k in lo..hi {
        let (a, b) = (x.dim(k + 1), y.dim(k));
        let mut i = ComplexMatrix::zeros(a + b, b);
        i.view_mut((a, 0), (b, b)).fill_with_identity();
        inclusion.insert(k, i);
        let mut p = ComplexMatrix::zeros(a, a + b);
        p.view_mut((0, 0), (a, a)).fill_with_identity();
        projection.insert(k, p);
    }
    let cone = CochainComplex::new(lo, dims, diffs).expect("cone blocks have consistent shapes");
    MappingCone {
        cone,
        inclusion: CochainMap::new(inclusion),
        projection: CochainMap::new(projection),
    }
}

/// Mapping cone of a cochain map, after validating it.
pub fn mapping_cone(x: &CochainComplex, y: &CochainComplex, f: &CochainMap) -> Result<MappingCone> {
    f.validate(x, y, DEFAULT_CHAIN_TOL)?;
    Ok(mapping_cone_unchecked(x, y, f))
}

/// Cohomology in one degree.
///
/// `representatives` has orthonormal columns spanning the harmonic space
/// `ker d^k ∩ (im d^{k-1})^⊥`; `coordinates` is a left inverse that sends a
/// cocycle to the coordinates of its class. Because `ker d^k` splits
/// orthogonally as harmonic space plus `im d^{k-1}`, the class of a cocycle
/// is its orthogonal projection onto the representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeCohomology {
    pub degree: i32,
    pub representatives: ComplexMatrix,
    pub coordinates: ComplexMatrix,
}

impl DegreeCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.ncols()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyData {
    degrees: BTreeMap<i32, DegreeCohomology>,
    /// Set when some rank decision sat within a factor 10 of the threshold.
    pub ambiguous: bool,
}

impl CohomologyData {
    pub fn dim(&self, k: i32) -> usize {
        self.degrees.get(&k).map_or(0, DegreeCohomology::dim)
    }

    pub fn degree(&self, k: i32) -> Option<&DegreeCohomology> {
        self.degrees.get(&k)
    }

    /// Representatives in degree `k`, sized `ambient x dim`.
    pub fn representatives(&self, k: i32, ambient: usize) -> ComplexMatrix {
        self.degrees
            .get(&k)
            .map(|d| d.representatives.clone())
            .unwrap_or_else(|| ComplexMatrix::zeros(ambient, 0))
    }

    /// Class-coordinate map in degree `k`, sized `dim x ambient`.
    pub fn coordinates(&self, k: i32, ambient: usize) -> ComplexMatrix {
        self.degrees
            .get(&k)
            .map(|d| d.coordinates.clone())
            .unwrap_or_else(|| ComplexMatrix::zeros(0, ambient))
    }

    /// `(degree, dim H^k)` over the nonzero degrees.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.degrees
            .values()
            .filter(|d| d.dim() > 0)
            .map(|d| (d.degree, d.dim()))
            .collect()
    }

    pub fn h_plus_dim(&self) -> usize {
        self.degrees
            .values()
            .filter(|d| d.degree.rem_euclid(2) == 0)
            .map(DegreeCohomology::dim)
            .sum()
    }

    pub fn h_minus_dim(&self) -> usize {
        self.degrees
            .values()
            .filter(|d| d.degree.rem_euclid(2) == 1)
            .map(DegreeCohomology::dim)
            .sum()
    }

    pub fn index(&self) -> i64 {
        self.h_plus_dim() as i64 - self.h_minus_dim() as i64
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.values().all(|d| d.dim() == 0)
    }

    /// Scales one basis class in degree `k`, changing the reference volume
    /// of that degree by `factor`.
    pub fn rescale(&mut self, k: i32, column: usize, factor: num_complex::Complex64) -> Result<()> {
        let d = self
            .degrees
            .get_mut(&k)
            .filter(|d| column < d.dim())
            .ok_or_else(|| Error::invalid(format!("no cohomology class {column} in degree {k}")))?;
        if factor.norm() == 0.0 {
            return Err(Error::invalid("rescaling factor must be nonzero"));
        }
        let mut col = d.representatives.column_mut(column);
        col *= factor;
        let mut row = d.coordinates.row_mut(column);
        row /= factor;
        Ok(())
    }

    /// Matrix of the map induced by `f^k : X^k -> Y^{k'}` between the
    /// chosen bases of `H^k(X)` and `H^{k'}(Y)`.
    pub fn induced(
        source: &CohomologyData,
        k: i32,
        target: &CohomologyData,
        k_target: i32,
        f: &ComplexMatrix,
    ) -> ComplexMatrix {
        let reps = source.representatives(k, f.ncols());
        let coords = target.coordinates(k_target, f.nrows());
        coords * f * reps
    }
}

/// Harmonic representatives of every degree of `x`.
pub fn cohomology(x: &CochainComplex, policy: &RankPolicy) -> CohomologyData {
    let mut degrees = BTreeMap::new();
    let mut ambiguous = false;
    for k in x.degrees() {
        let n = x.dim(k);
        let ker = linalg::kernel(&x.differential(k), policy);
        let img = linalg::image(&x.differential(k - 1), policy);
        ambiguous |= ker.ambiguous || img.ambiguous;
        let h = ker.dim().saturating_sub(img.dim());
        if img.dim() > ker.dim() {
            ambiguous = true;
        }
        let reps = if h == 0 {
            ComplexMatrix::zeros(n, 0)
        } else if img.dim() == 0 {
            ker.basis.clone()
        } else {
            let projected = &ker.basis - &img.basis * (img.basis.adjoint() * &ker.basis);
            linalg::leading_left_vectors(&projected, h)
        };
        let coords = reps.adjoint();
        degrees.insert(
            k,
            DegreeCohomology {
                degree: k,
                representatives: reps,
                coordinates: coords,
            },
        );
    }
    CohomologyData { degrees, ambiguous }
}

/// Everything produced when a cochain map is turned into its six-term
/// sequence: the cone, the three cohomologies and the induced maps.
#[derive(Clone, Debug)]
pub struct SixTerm {
    pub cone: MappingCone,
    pub source: CohomologyData,
    pub target: CohomologyData,
    pub cone_cohomology: CohomologyData,
    pub sequence: SixTermSequence,
}

/// Block-diagonal assembly over the degrees `k` of one parity, where the
/// block for `k` maps `H^k(source) -> H^{k+shift}(target)`.
#[allow(clippy::too_many_arguments)]
fn parity_block(
    lo: i32,
    hi: i32,
    parity: i32,
    shift: i32,
    source: &CohomologyData,
    source_cx: &CochainComplex,
    target: &CohomologyData,
    target_cx: &CochainComplex,
    map: &CochainMap,
) -> ComplexMatrix {
    let blocks: Vec<ComplexMatrix> = (lo..=hi)
        .filter(|k| k.rem_euclid(2) == parity)
        .map(|k| {
            let m = map.component(k, target_cx.dim(k + shift), source_cx.dim(k));
            CohomologyData::induced(source, k, target, k + shift, &m)
        })
        .collect();
    linalg::block_diag(&blocks)
}

/// Assembles the six-term sequence from precomputed cohomology bases.
///
/// The bases fix the reference volumes of `|X|`, `|Y|` and `|C_f|`; callers
/// that want non-default volumes rescale them before calling this.
pub fn six_term_sequence(
    x: &CochainComplex,
    y: &CochainComplex,
    f: &CochainMap,
    cone: &MappingCone,
    hx: &CohomologyData,
    hy: &CohomologyData,
    hc: &CohomologyData,
) -> SixTermSequence {
    let c = &cone.cone;
    let lo = [x, y, c].iter().filter(|z| !z.is_zero()).map(|z| z.start()).min().unwrap_or(0) - 1;
    let hi = [x, y, c].iter().filter(|z| !z.is_zero()).map(|z| z.end()).max().unwrap_or(0) + 1;
    let xs = x.shift();
    let block = |parity, shift, s: &CohomologyData, scx: &CochainComplex, t: &CohomologyData, tcx: &CochainComplex, m: &CochainMap| {
        parity_block(lo, hi, parity, shift, s, scx, t, tcx, m)
    };
    // The projection lands in X[1]^k = X^{k+1}; X and X[1] share cocycles
    // and coboundaries, so the bases of H^{k+1}(X) serve for H^k(X[1]).
    let p = |parity| {
        let blocks: Vec<ComplexMatrix> = (lo..=hi)
            .filter(|k| k.rem_euclid(2) == parity)
            .map(|k| {
                let m = cone.projection.component(k, xs.dim(k), c.dim(k));
                CohomologyData::induced(hc, k, hx, k + 1, &m)
            })
            .collect();
        linalg::block_diag(&blocks)
    };
    SixTermSequence {
        f_plus: block(0, 0, hx, x, hy, y, f),
        f_minus: block(1, 0, hx, x, hy, y, f),
        i_plus: block(0, 0, hy, y, hc, c, &cone.inclusion),
        i_minus: block(1, 0, hy, y, hc, c, &cone.inclusion),
        p_plus: p(0),
        p_minus: p(1),
    }
}

/// The six-term exact sequence `H^±(X) -> H^±(Y) -> H^±(C_f) -> H^∓(X)` of a
/// cochain map, with exactness verified at all six nodes.
pub fn six_term(
    x: &CochainComplex,
    y: &CochainComplex,
    f: &CochainMap,
    policy: &RankPolicy,
) -> Result<SixTerm> {
    let cone = mapping_cone(x, y, f)?;
    let source = cohomology(x, policy);
    let target = if x == y { source.clone() } else { cohomology(y, policy) };
    let cone_cohomology = cohomology(&cone.cone, policy);
    let sequence = six_term_sequence(x, y, f, &cone, &source, &target, &cone_cohomology);
    sequence.check_exact(policy)?;
    Ok(SixTerm {
        cone,
        source,
        target,
        cone_cohomology,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, real_matrix};

    fn scalar_map(a: f64) -> CochainMap {
        CochainMap::from_components(0, vec![real_matrix(&[&[a]])])
    }

    #[test]
    fn cohomology_of_two_term_complexes() {
        let p = RankPolicy::default();
        let zero = CochainComplex::new(-1, vec![1, 1], vec![real_matrix(&[&[0.0]])]).unwrap();
        let h = cohomology(&zero, &p);
        assert_eq!((h.dim(-1), h.dim(0), h.index()), (1, 1, 0));
        let iso = CochainComplex::new(-1, vec![1, 1], vec![real_matrix(&[&[1.0]])]).unwrap();
        assert!(cohomology(&iso, &p).is_acyclic());
    }

    #[test]
    fn shift_negates_and_lowers() {
        let x = CochainComplex::new(-1, vec![1, 1], vec![real_matrix(&[&[1.0]])]).unwrap();
        let s = x.shift();
        assert_eq!(s.start(), -2);
        assert_eq!(s.differential(-2)[(0, 0)], c64(-1.0, 0.0));
        let ss = s.shift();
        assert_eq!(ss.start(), -3);
        assert_eq!(ss.differential(-3)[(0, 0)], c64(1.0, 0.0));
        assert!(CochainComplex::zero().shift().is_zero());
    }

    #[test]
    fn cone_of_scalar_map() {
        let x = CochainComplex::concentrated(0, 1);
        let cone = mapping_cone(&x, &x, &scalar_map(4.0)).unwrap();
        assert_eq!(cone.cone.start(), -1);
        assert_eq!(cone.cone.dims(), &[1, 1]);
        assert_eq!(cone.cone.differential(-1)[(0, 0)], c64(4.0, 0.0));
    }

    #[test]
    fn cone_from_zero_source_is_target() {
        let y = CochainComplex::new(0, vec![2, 1], vec![real_matrix(&[&[1.0, 2.0]])]).unwrap();
        let cone = mapping_cone(&CochainComplex::zero(), &y, &CochainMap::zero()).unwrap();
        assert_eq!(cone.cone, y);
        assert_eq!(
            cone.inclusion.component(0, 2, 2),
            ComplexMatrix::identity(2, 2)
        );
    }

    #[test]
    fn identity_cone_is_acyclic() {
        let x = CochainComplex::new(
            -1,
            vec![2, 3, 1],
            vec![
                real_matrix(&[&[1.0, 0.0], &[0.0, 0.0], &[0.0, 1.0]]),
                real_matrix(&[&[0.0, 1.0, 0.0]]),
            ],
        )
        .unwrap();
        assert!(x.d_squared_defect() < 1e-15);
        let cone = mapping_cone(&x, &x, &CochainMap::identity(&x)).unwrap();
        assert!(cohomology(&cone.cone, &RankPolicy::default()).is_acyclic());
    }

    #[test]
    fn zero_map_six_term_dimensions() {
        let x = CochainComplex::concentrated(0, 1);
        let st = six_term(&x, &x, &scalar_map(0.0), &RankPolicy::default()).unwrap();
        assert_eq!(st.cone_cohomology.dim(-1), 1);
        assert_eq!(st.cone_cohomology.dim(0), 1);
        assert_eq!(st.sequence.i_plus.shape(), (1, 1));
        assert!((st.sequence.i_plus[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((st.sequence.p_minus[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_chain_map_rejected() {
        let x = CochainComplex::new(0, vec![1, 1], vec![real_matrix(&[&[1.0]])]).unwrap();
        let f = CochainMap::from_components(0, vec![real_matrix(&[&[1.0]]), real_matrix(&[&[2.0]])]);
        assert!(matches!(
            mapping_cone(&x, &x, &f),
            Err(Error::NotChainMap { .. })
        ));
    }
}
