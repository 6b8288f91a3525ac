//! Dense complex linear algebra: the matrix alias, the shared rank policy,
//! SVD-based subspaces and log-polar determinants.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::PolarScalar;

pub type ComplexMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Shorthand for a complex literal.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Decides which singular values count as zero.
///
/// A singular value is zero when it lies below
/// `max(absolute_floor, relative_threshold * sigma_max)`. A decision is
/// flagged ambiguous when some singular value lies within a factor 10 of
/// that threshold on either side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RankPolicy {
    pub relative_threshold: f64,
    pub absolute_floor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            relative_threshold: 1e-8,
            absolute_floor: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankDecision {
    pub rank: usize,
    pub ambiguous: bool,
}

impl RankPolicy {
    pub fn with_relative(relative_threshold: f64) -> Self {
        RankPolicy {
            relative_threshold,
            ..Default::default()
        }
    }

    pub fn threshold(&self, sigma_max: f64) -> f64 {
        self.absolute_floor.max(self.relative_threshold * sigma_max)
    }

    /// Rank decision for singular values sorted in decreasing order.
    pub fn decide(&self, sigma: &[f64]) -> RankDecision {
        let smax = sigma.first().copied().unwrap_or(0.0);
        let thr = self.threshold(smax);
        let rank = sigma.iter().filter(|&&s| s > thr).count();
        let ambiguous = sigma
            .iter()
            .any(|&s| s > thr / 10.0 && s < thr * 10.0);
        RankDecision { rank, ambiguous }
    }
}

/// Orthonormal basis of a subspace, stored as columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub basis: ComplexMatrix,
    pub ambiguous: bool,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

struct SortedSvd {
    u: ComplexMatrix,
    sigma: Vec<f64>,
    v: ComplexMatrix,
}

/// Thin SVD with singular values sorted in decreasing order.
///
/// Computed by `faer`: the complex SVD of `nalgebra` 0.35 returns factors
/// that fail to reconstruct some wide and tall Koszul differentials.
fn sorted_svd(m: &ComplexMatrix) -> SortedSvd {
    let (r, c) = m.shape();
    let k = r.min(c);
    if k == 0 {
        return SortedSvd {
            u: ComplexMatrix::zeros(r, 0),
            sigma: Vec::new(),
            v: ComplexMatrix::zeros(c, 0),
        };
    }
    let fm = faer::Mat::<Complex64>::from_fn(r, c, |i, j| m[(i, j)]);
    let svd = fm.thin_svd().expect("SVD converges on finite input");
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| s[b].re.partial_cmp(&s[a].re).unwrap_or(std::cmp::Ordering::Equal));
    SortedSvd {
        u: ComplexMatrix::from_fn(r, k, |i, j| u[(i, order[j])]),
        sigma: order.iter().map(|&i| s[i].re).collect(),
        v: ComplexMatrix::from_fn(c, k, |i, j| v[(i, order[j])]),
    }
}

/// Singular values in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    sorted_svd(m).sigma
}

pub fn rank(m: &ComplexMatrix, policy: &RankPolicy) -> RankDecision {
    policy.decide(&singular_values(m))
}

/// Largest singular value (zero for empty matrices).
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Orthonormal basis of the kernel.
pub fn kernel(m: &ComplexMatrix, policy: &RankPolicy) -> Subspace {
    let (r, c) = m.shape();
    if c == 0 {
        return Subspace {
            basis: ComplexMatrix::zeros(0, 0),
            ambiguous: false,
        };
    }
    if r == 0 {
        return Subspace {
            basis: ComplexMatrix::identity(c, c),
            ambiguous: false,
        };
    }
    // Pad short matrices so the SVD returns a full set of right vectors.
    let padded;
    let target = if r < c {
        let mut p = ComplexMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        padded = p;
        &padded
    } else {
        m
    };
    let svd = sorted_svd(target);
    let decision = policy.decide(&svd.sigma[..r.min(c)]);
    Subspace {
        basis: svd.v.columns(decision.rank, c - decision.rank).into_owned(),
        ambiguous: decision.ambiguous,
    }
}

/// Orthonormal basis of the orthogonal complement of the kernel (the row
/// space, in domain coordinates).
pub fn coimage(m: &ComplexMatrix, policy: &RankPolicy) -> Subspace {
    let svd = sorted_svd(m);
    let decision = policy.decide(&svd.sigma);
    Subspace {
        basis: svd.v.columns(0, decision.rank).into_owned(),
        ambiguous: decision.ambiguous,
    }
}

/// Orthonormal basis of the column space.
pub fn image(m: &ComplexMatrix, policy: &RankPolicy) -> Subspace {
    let svd = sorted_svd(m);
    let decision = policy.decide(&svd.sigma);
    Subspace {
        basis: svd.u.columns(0, decision.rank).into_owned(),
        ambiguous: decision.ambiguous,
    }
}

/// The `k` dominant left singular vectors.
pub fn leading_left_vectors(m: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let svd = sorted_svd(m);
    svd.u.columns(0, k.min(svd.u.ncols())).into_owned()
}

/// The `k` right singular vectors belonging to the smallest singular values
/// of a square matrix.
pub fn trailing_right_vectors(m: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let svd = sorted_svd(m);
    let n = svd.v.ncols();
    svd.v.columns(n - k.min(n), k.min(n)).into_owned()
}

/// Determinant by LU factorization with partial pivoting, returned in
/// log-polar form. `None` when an exact zero pivot occurs.
pub fn log_det(m: &ComplexMatrix) -> Option<PolarScalar> {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut acc = PolarScalar::ONE;
    for k in 0..n {
        let mut piv = k;
        let mut best = a[(k, k)].norm();
        for i in (k + 1)..n {
            let v = a[(i, k)].norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return None;
        }
        if piv != k {
            a.swap_rows(k, piv);
            acc = -acc;
        }
        let p = a[(k, k)];
        acc = acc * PolarScalar::from_complex(p)?;
        for i in (k + 1)..n {
            let factor = a[(i, k)] / p;
            if factor == ZERO {
                continue;
            }
            for j in (k + 1)..n {
                let t = a[(k, j)];
                a[(i, j)] -= factor * t;
            }
        }
    }
    Some(acc)
}

/// Determinant in rectangular form (zero allowed).
pub fn det(m: &ComplexMatrix) -> Complex64 {
    log_det(m).map(PolarScalar::to_complex).unwrap_or(ZERO)
}

/// Reciprocal condition estimate `sigma_min / sigma_max` of a square matrix.
pub fn inverse_condition(m: &ComplexMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        (Some(_), Some(_)) => 0.0,
        _ => 1.0,
    }
}

/// Horizontal concatenation; all blocks must share the row count `rows`.
pub fn hstack(blocks: &[&ComplexMatrix], rows: usize) -> ComplexMatrix {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        debug_assert_eq!(b.nrows(), rows);
        out.view_mut((0, c), (rows, b.ncols())).copy_from(*b);
        c += b.ncols();
    }
    out
}

/// Vertical concatenation; all blocks must share the column count `cols`.
pub fn vstack(blocks: &[&ComplexMatrix], cols: usize) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        debug_assert_eq!(b.ncols(), cols);
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(*b);
        r += b.nrows();
    }
    out
}

pub fn block_diag(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// `I_copies ⊗ b`: `copies` diagonal copies of `b`.
pub fn repeat_diag(b: &ComplexMatrix, copies: usize) -> ComplexMatrix {
    let (r, c) = b.shape();
    let mut out = ComplexMatrix::zeros(r * copies, c * copies);
    for k in 0..copies {
        out.view_mut((k * r, k * c), (r, c)).copy_from(b);
    }
    out
}

/// Builds a matrix from nested rows of complex numbers.
pub fn from_rows(rows: &[Vec<Complex64>]) -> ComplexMatrix {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    ComplexMatrix::from_fn(nr, nc, |i, j| rows[i][j])
}

/// Builds a matrix from nested rows of real numbers.
pub fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    ComplexMatrix::from_fn(nr, nc, |i, j| c64(rows[i][j], 0.0))
}

pub fn diag(entries: &[Complex64]) -> ComplexMatrix {
    let n = entries.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
}
