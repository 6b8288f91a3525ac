//! Independent brute-force oracle for ranks, cohomology and joint torsion.
//!
//! Everything here uses Gaussian elimination with partial pivoting, bases
//! read off from reduced row echelon forms and coordinate complements of
//! kernels. Nothing is shared with the library beyond the matrix storage
//! type, so agreement with the library is evidence for both the sign
//! conventions and the choice independence of the constructions.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use torsion_lab::fredholm::{CochainComplex, CochainMap};

pub type M = DMatrix<Complex64>;

pub const PIVOT_TOL: f64 = 1e-9;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn scale_of(m: &M) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &M) -> (M, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let tol = PIVOT_TOL * scale_of(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, size) = (r..rows)
            .map(|i| (i, a[(i, c)].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if size <= tol {
            for i in r..rows {
                a[(i, c)] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        a.swap_rows(r, best);
        let p = a[(r, c)];
        for j in 0..cols {
            a[(r, j)] /= p;
        }
        for i in 0..rows {
            if i != r {
                let factor = a[(i, c)];
                if factor.norm() > 0.0 {
                    for j in 0..cols {
                        let v = a[(r, j)];
                        a[(i, j)] -= factor * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &M) -> usize {
    rref(m).1.len()
}

/// Null-space basis with one vector per free column.
pub fn null_space(m: &M) -> M {
    let cols = m.ncols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = M::zeros(cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out[(fc, k)] = one();
        for (row, &pc) in pivots.iter().enumerate() {
            out[(pc, k)] = -r[(row, fc)];
        }
    }
    out
}

/// Solves `a x = b` for a consistent system, column by column.
pub fn solve(a: &M, b: &M) -> M {
    let (rows, cols) = a.shape();
    let mut aug = M::zeros(rows, cols + b.ncols());
    aug.view_mut((0, 0), (rows, cols)).copy_from(a);
    aug.view_mut((0, cols), (rows, b.ncols())).copy_from(b);
    let (r, pivots) = rref(&aug);
    assert!(pivots.iter().all(|&p| p < cols), "oracle: inconsistent linear system");
    let mut x = M::zeros(cols, b.ncols());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.ncols() {
            x[(pc, j)] = r[(row, cols + j)];
        }
    }
    x
}

/// Determinant by elimination with partial pivoting.
pub fn det(m: &M) -> Complex64 {
    assert_eq!(m.nrows(), m.ncols(), "oracle: determinant of a non-square matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut d = one();
    for c in 0..n {
        let best = (c..n)
            .max_by(|&i, &j| a[(i, c)].norm().partial_cmp(&a[(j, c)].norm()).unwrap())
            .unwrap();
        if a[(best, c)].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if best != c {
            a.swap_rows(best, c);
            d = -d;
        }
        let p = a[(c, c)];
        d *= p;
        for i in (c + 1)..n {
            let factor = a[(i, c)] / p;
            for j in c..n {
                let v = a[(c, j)];
                a[(i, j)] -= factor * v;
            }
        }
    }
    d
}

pub fn hcat(blocks: &[&M], rows: usize) -> M {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = M::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        out.view_mut((0, c), (rows, b.ncols())).copy_from(*b);
        c += b.ncols();
    }
    out
}

pub fn block_diag(blocks: &[M]) -> M {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = M::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// A bounded cochain complex with `d[k] : X^k -> X^{k+1}`.
#[derive(Clone, Debug)]
pub struct Cx {
    pub dims: BTreeMap<i32, usize>,
    pub d: BTreeMap<i32, M>,
}

impl Cx {
    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn lo(&self) -> i32 {
        self.dims.iter().find(|(_, &n)| n > 0).map(|(&k, _)| k).unwrap_or(0)
    }

    pub fn hi(&self) -> i32 {
        self.dims.iter().rev().find(|(_, &n)| n > 0).map(|(&k, _)| k).unwrap_or(0)
    }

    pub fn diff(&self, k: i32) -> M {
        self.d
            .get(&k)
            .cloned()
            .unwrap_or_else(|| M::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn from_library(x: &CochainComplex) -> Self {
        let mut dims = BTreeMap::new();
        let mut d = BTreeMap::new();
        for k in x.degrees() {
            dims.insert(k, x.dim(k));
            d.insert(k, x.differential(k));
        }
        Cx { dims, d }
    }

    pub fn d_squared(&self) -> f64 {
        (self.lo() - 1..=self.hi())
            .map(|k| (self.diff(k + 1) * self.diff(k)).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

/// Degreewise components of a cochain map.
#[derive(Clone, Debug, Default)]
pub struct Map(pub BTreeMap<i32, M>);

impl Map {
    pub fn at(&self, k: i32, rows: usize, cols: usize) -> M {
        self.0.get(&k).cloned().unwrap_or_else(|| M::zeros(rows, cols))
    }

    pub fn from_library(f: &CochainMap, x: &CochainComplex) -> Self {
        Map(x.degrees().map(|k| (k, f.between(k, x, x))).collect())
    }
}

/// Cohomology representatives per degree together with coboundary bases.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub reps: BTreeMap<i32, M>,
    pub boundaries: BTreeMap<i32, M>,
}

/// Greedy extension of a coboundary basis by cocycles, in column order.
pub fn cohomology(x: &Cx) -> Cohomology {
    let mut reps = BTreeMap::new();
    let mut boundaries = BTreeMap::new();
    for k in x.lo() - 1..=x.hi() + 1 {
        let n = x.dim(k);
        let cocycles = null_space(&x.diff(k));
        let incoming = x.diff(k - 1);
        let pivots = rref(&incoming).1;
        let b = M::from_fn(n, pivots.len(), |i, j| incoming[(i, pivots[j])]);
        let mut chosen = b.clone();
        let mut h: Vec<usize> = Vec::new();
        for j in 0..cocycles.ncols() {
            let trial = hcat(&[&chosen, &cocycles.columns(j, 1).into_owned()], n);
            if rank(&trial) > chosen.ncols() {
                chosen = trial;
                h.push(j);
            }
        }
        let r = M::from_fn(n, h.len(), |i, j| cocycles[(i, h[j])]);
        reps.insert(k, r);
        boundaries.insert(k, b);
    }
    Cohomology { reps, boundaries }
}

impl Cohomology {
    pub fn dim(&self, k: i32) -> usize {
        self.reps.get(&k).map(|r| r.ncols()).unwrap_or(0)
    }

    fn reps_at(&self, k: i32, n: usize) -> M {
        self.reps.get(&k).cloned().unwrap_or_else(|| M::zeros(n, 0))
    }

    fn boundaries_at(&self, k: i32, n: usize) -> M {
        self.boundaries.get(&k).cloned().unwrap_or_else(|| M::zeros(n, 0))
    }

    /// Coordinates of cocycles `v` in the representative basis.
    pub fn coordinates(&self, k: i32, v: &M) -> M {
        let n = v.nrows();
        let h = self.reps_at(k, n);
        if h.ncols() == 0 {
            return M::zeros(0, v.ncols());
        }
        let basis = hcat(&[&h, &self.boundaries_at(k, n)], n);
        let x = solve(&basis, v);
        x.rows(0, h.ncols()).into_owned()
    }
}

/// Matrix of `H^k(X) -> H^{k'}(Y)` induced by `m : X^k -> Y^{k'}`.
pub fn induced(hx: &Cohomology, k: i32, nx: usize, hy: &Cohomology, kk: i32, m: &M) -> M {
    let reps = hx.reps_at(k, nx);
    if reps.ncols() == 0 {
        return M::zeros(hy.dim(kk), 0);
    }
    hy.coordinates(kk, &(m * reps))
}

/// The cone `C^k = X^{k+1} ⊕ Y^k` with `d = [[-d_X, 0], [f, d_Y]]`,
/// inclusion `(0; 1)` and projection `(1 0)`.
pub struct Cone {
    pub cx: Cx,
    pub inclusion: Map,
    pub projection: Map,
}

pub fn cone(x: &Cx, y: &Cx, f: &Map) -> Cone {
    let lo = (x.lo() - 1).min(y.lo()) - 1;
    let hi = (x.hi() - 1).max(y.hi()) + 1;
    let mut dims = BTreeMap::new();
    let mut d = BTreeMap::new();
    let mut inclusion = BTreeMap::new();
    let mut projection = BTreeMap::new();
    for k in lo..=hi {
        let (a, b) = (x.dim(k + 1), y.dim(k));
        dims.insert(k, a + b);
        let (a1, b1) = (x.dim(k + 2), y.dim(k + 1));
        let mut m = M::zeros(a1 + b1, a + b);
        m.view_mut((0, 0), (a1, a)).copy_from(&(-x.diff(k + 1)));
        m.view_mut((a1, 0), (b1, a)).copy_from(&f.at(k + 1, b1, a));
        m.view_mut((a1, a), (b1, b)).copy_from(&y.diff(k));
        d.insert(k, m);
        let mut inc = M::zeros(a + b, b);
        inc.view_mut((a, 0), (b, b)).fill_with_identity();
        inclusion.insert(k, inc);
        let mut proj = M::zeros(a, a + b);
        proj.view_mut((0, 0), (a, a)).fill_with_identity();
        projection.insert(k, proj);
    }
    Cone {
        cx: Cx { dims, d },
        inclusion: Map(inclusion),
        projection: Map(projection),
    }
}

/// The six induced maps `f±, i±, p±` assembled over degrees of one parity in
/// ascending order.
pub struct Six {
    pub f: [M; 2],
    pub i: [M; 2],
    pub p: [M; 2],
}

pub fn six(x: &Cx, hx: &Cohomology, y: &Cx, hy: &Cohomology, f: &Map, c: &Cone, hc: &Cohomology) -> Six {
    let lo = x.lo().min(y.lo()).min(c.cx.lo()) - 2;
    let hi = x.hi().max(y.hi()).max(c.cx.hi()) + 2;
    let build = |parity: i32, which: u8| -> M {
        let blocks: Vec<M> = (lo..=hi)
            .filter(|k| k.rem_euclid(2) == parity)
            .map(|k| match which {
                0 => induced(hx, k, x.dim(k), hy, k, &f.at(k, y.dim(k), x.dim(k))),
                1 => induced(hy, k, y.dim(k), hc, k, &c.inclusion.at(k, c.cx.dim(k), y.dim(k))),
                _ => induced(hc, k, c.cx.dim(k), hx, k + 1, &c.projection.at(k, x.dim(k + 1), c.cx.dim(k))),
            })
            .collect();
        block_diag(&blocks)
    };
    Six {
        f: [build(0, 0), build(1, 0)],
        i: [build(0, 1), build(1, 1)],
        p: [build(0, 2), build(1, 2)],
    }
}

/// Coordinate complement of `ker m`: the standard vectors at the pivot
/// columns of its row echelon form.
pub fn pivot_complement(m: &M) -> M {
    let pivots = rref(m).1;
    let mut t = M::zeros(m.ncols(), pivots.len());
    for (j, &p) in pivots.iter().enumerate() {
        t[(p, j)] = one();
    }
    t
}

/// Torsion isomorphism `s` with `|V|(vol V2) = s · vol V1 ⊗ vol V` for
/// exact `V1± -f±-> V2± -i±-> V± -p±-> V1∓`, built from coordinate
/// complements.
pub fn torsion_iso(f: &[M; 2], i: &[M; 2], p: &[M; 2]) -> Complex64 {
    let t1 = [pivot_complement(&f[0]), pivot_complement(&f[1])];
    let t2 = [pivot_complement(&i[0]), pivot_complement(&i[1])];
    let t = [pivot_complement(&p[0]), pivot_complement(&p[1])];
    let vol = |a: M, b: &M| det(&hcat(&[&a, b], b.nrows()));
    let a2 = [vol(&f[0] * &t1[0], &t2[0]), vol(&f[1] * &t1[1], &t2[1])];
    let a1 = [vol(&p[1] * &t[1], &t1[0]), vol(&p[0] * &t[0], &t1[1])];
    let a = [vol(&i[0] * &t2[0], &t[0]), vol(&i[1] * &t2[1], &t[1])];
    let e = |m: &M| m.ncols();
    let mu = e(&t2[0]) * (e(&t1[1]) + e(&t1[0]))
        + e(&t1[1]) * (e(&t[0]) + e(&t[1]))
        + e(&t[1]) * (e(&t2[0]) + e(&t2[1]))
        + e(&t[0]);
    let sign = if mu % 2 == 1 { -1.0 } else { 1.0 };
    sign * (a1[0] / a1[1]) * (a[0] / a[1]) / (a2[0] / a2[1])
}

/// `diag(g^{k+1}, g^k)` on the cone of `f : X -> X`.
fn delta(x: &Cx, g: &Map, c: &Cx) -> Map {
    Map(c
        .dims
        .keys()
        .map(|&k| {
            let hi = g.at(k + 1, x.dim(k + 1), x.dim(k + 1));
            let lo = g.at(k, x.dim(k), x.dim(k));
            (k, block_diag(&[hi, lo]))
        })
        .collect())
}

fn endo_torsion(c: &Cx, hc: &Cohomology, m: &Map) -> (Complex64, Cone, Cohomology) {
    let double = cone(c, c, m);
    let hd = cohomology(&double.cx);
    let s = six(c, hc, c, hc, m, &double, &hd);
    (torsion_iso(&s.f, &s.i, &s.p), double, hd)
}

/// `JT(X; f, g) = τ(δ(g)) · det H^+(Φ) / det H^-(Φ) / τ(δ(f))`.
pub fn joint_torsion(x: &Cx, f: &Map, g: &Map) -> Complex64 {
    let cf = cone(x, x, f);
    let cg = cone(x, x, g);
    let hf = cohomology(&cf.cx);
    let hg = cohomology(&cg.cx);
    let (tg, dg, hdg) = endo_torsion(&cf.cx, &hf, &delta(x, g, &cf.cx));
    let (tf, df, hdf) = endo_torsion(&cg.cx, &hg, &delta(x, f, &cg.cx));
    let lo = dg.cx.lo().min(df.cx.lo()) - 1;
    let hi = dg.cx.hi().max(df.cx.hi()) + 1;
    let swap_det = |parity: i32| -> Complex64 {
        let blocks: Vec<M> = (lo..=hi)
            .filter(|k| k.rem_euclid(2) == parity)
            .map(|k| {
                let (a, b, c) = (x.dim(k + 2), x.dim(k + 1), x.dim(k));
                let n = a + 2 * b + c;
                let mut phi = M::zeros(n, n);
                for i in 0..a {
                    phi[(i, i)] = -one();
                }
                phi.view_mut((a, a + b), (b, b)).fill_with_identity();
                phi.view_mut((a + b, a), (b, b)).fill_with_identity();
                phi.view_mut((a + 2 * b, a + 2 * b), (c, c)).fill_with_identity();
                induced(&hdg, k, n, &hdf, k, &phi)
            })
            .collect();
        det(&block_diag(&blocks))
    };
    tg * (swap_det(0) / swap_det(1)) / tf
}

pub fn jt_of_library(x: &CochainComplex, f: &CochainMap, g: &CochainMap) -> Complex64 {
    joint_torsion(&Cx::from_library(x), &Map::from_library(f, x), &Map::from_library(g, x))
}

/// Koszul complex with `K^{-p} = H ⊗ Λ^p` in lexicographic subset order and
/// `d(v ⊗ e_S) = Σ_s (-1)^s A_{S_s} v ⊗ e_{S ∖ S_s}`.
pub fn koszul(a: &[M]) -> Cx {
    let n = a.len();
    let dim = a.first().map(|m| m.nrows()).unwrap_or(0);
    let subsets = |p: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == p {
                out.push((0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>());
            }
        }
        out.sort();
        out
    };
    let mut dims = BTreeMap::new();
    let mut d = BTreeMap::new();
    for p in 0..=n {
        dims.insert(-(p as i32), dim * subsets(p).len());
    }
    for p in 1..=n {
        let src = subsets(p);
        let tgt = subsets(p - 1);
        let mut m = M::zeros(dim * tgt.len(), dim * src.len());
        for (si, s) in src.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let ti = tgt.iter().position(|t| *t == rest).unwrap();
                let sign = if pos % 2 == 1 { -1.0 } else { 1.0 };
                let block = &a[j] * Complex64::new(sign, 0.0);
                m.view_mut((ti * dim, si * dim), (dim, dim)).copy_from(&block);
            }
        }
        d.insert(-(p as i32), m);
    }
    Cx { dims, d }
}

pub fn rel_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}
