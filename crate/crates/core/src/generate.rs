//! Seeded random inputs for property batteries: commuting tuples with known
//! joint spectra, polynomial triples with prescribed zeros, disc-model
//! symbol pairs and plane systems with an isolated zero at the origin.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fredholm::CochainMap;
use crate::koszul::{build_koszul, koszul_of_map, CommutingTuple};
use crate::torsion::JointTorsionProblem;
use crate::linalg::{self, c64, ComplexMatrix, ONE, ZERO};
use crate::poly::MultiPolynomial;

/// The generator used everywhere, so a seed pins every draw.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_in_box(rng: &mut impl Rng, half_width: f64) -> Complex64 {
    c64(rng.gen_range(-half_width..half_width), rng.gen_range(-half_width..half_width))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_in_box(rng, scale))
}

/// A random unitary from the QR factorization of a random matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    random_matrix(rng, dim, dim, 1.0).qr().q()
}

/// A commuting tuple together with the joint eigenvalues it was built from.
#[derive(Clone, Debug)]
pub struct GeneratedTuple {
    pub tuple: CommutingTuple,
    /// Distinct joint eigenvalues with the dimension of each block.
    pub points: Vec<(Vec<Complex64>, usize)>,
}

/// `A_j = S T_j S^{-1}` with block-diagonal upper triangular `T_j`. Each
/// block carries one joint eigenvalue `λ` and `T_j = λ_j + c_j N + d_j N^2`
/// for a shared strictly upper triangular `N`, so the tuple commutes
/// exactly before conjugation by a well-conditioned `S`.
pub fn commuting_tuple(rng: &mut impl Rng, dim: usize, n: usize, blocks: usize) -> GeneratedTuple {
    let blocks = blocks.clamp(1, dim.max(1));
    let mut sizes = vec![1usize; blocks];
    for _ in blocks..dim {
        let k = rng.gen_range(0..blocks);
        sizes[k] += 1;
    }
    let mut points: Vec<(Vec<Complex64>, usize)> = Vec::new();
    while points.len() < blocks {
        let p: Vec<Complex64> = (0..n).map(|_| complex_in_box(rng, 1.0)).collect();
        let separated = points
            .iter()
            .all(|(q, _)| p.iter().zip(q).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) > 0.2);
        if separated {
            points.push((p, sizes[points.len()]));
        }
    }
    let mut ts = vec![ComplexMatrix::zeros(dim, dim); n];
    let mut offset = 0;
    for (p, size) in &points {
        let mut nil = ComplexMatrix::zeros(*size, *size);
        for i in 0..*size {
            for j in (i + 1)..*size {
                nil[(i, j)] = complex_in_box(rng, 0.5);
            }
        }
        let nil2 = &nil * &nil;
        for (j, t) in ts.iter_mut().enumerate() {
            let c = complex_in_box(rng, 1.0);
            let d = complex_in_box(rng, 0.5);
            let block = ComplexMatrix::identity(*size, *size) * p[j] + &nil * c + &nil2 * d;
            t.view_mut((offset, offset), (*size, *size)).copy_from(&block);
        }
        offset += size;
    }
    let s = ComplexMatrix::identity(dim, dim) + random_matrix(rng, dim, dim, 0.3 / (dim as f64).sqrt().max(1.0));
    let s_inv = s.clone().try_inverse().expect("perturbed identity is invertible");
    let mats = ts.iter().map(|t| &s * t * &s_inv).collect();
    GeneratedTuple {
        tuple: CommutingTuple::with_tolerance(mats, 1e-9).expect("conjugated triangular tuple commutes"),
        points,
    }
}

/// A random linear form `Σ a_k (z_k - at_k)`.
pub fn linear_form_through(rng: &mut impl Rng, at: &[Complex64]) -> MultiPolynomial {
    let n = at.len();
    let mut p = MultiPolynomial::zero(n);
    for (k, &a) in at.iter().enumerate() {
        let coeff = complex_in_box(rng, 1.0) + c64(0.5, 0.0);
        p = &p + &(&MultiPolynomial::variable(n, k) - &MultiPolynomial::constant(n, a)).scale(coeff);
    }
    p
}

/// Cutting functions and a pair `(f, g)` on a tuple with at least two
/// joint eigenvalues `λ_0, λ_1`: every `h_i` vanishes at both, `g` at `λ_0`
/// and `f` at `λ_1`, so `Z(h, f, g)` misses the joint spectrum.
#[derive(Clone, Debug)]
pub struct NonsingularData {
    pub h: Vec<MultiPolynomial>,
    pub f: MultiPolynomial,
    pub g: MultiPolynomial,
}

pub fn nonsingular_data(rng: &mut impl Rng, points: &[(Vec<Complex64>, usize)]) -> NonsingularData {
    let n = points[0].0.len();
    let l0 = &points[0].0;
    let l1 = points.get(1).map(|p| p.0.clone()).unwrap_or_else(|| l0.iter().map(|z| z + c64(0.7, -0.3)).collect());
    let dir: Vec<Complex64> = l1.iter().zip(l0).map(|(a, b)| a - b).collect();
    let h = (0..n.saturating_sub(1))
        .map(|_| {
            // A linear form killing the direction λ_1 - λ_0, through λ_0.
            let mut a: Vec<Complex64> = (0..n).map(|_| complex_in_box(rng, 1.0)).collect();
            let k = (0..n).max_by(|&i, &j| dir[i].norm().partial_cmp(&dir[j].norm()).unwrap()).unwrap();
            let rest: Complex64 = (0..n).filter(|&i| i != k).map(|i| a[i] * dir[i]).sum();
            a[k] = -rest / dir[k];
            let mut p = MultiPolynomial::zero(n);
            for (i, &ai) in a.iter().enumerate() {
                p = &p + &(&MultiPolynomial::variable(n, i) - &MultiPolynomial::constant(n, l0[i])).scale(ai);
            }
            p
        })
        .collect();
    let unit = |rng: &mut ChaCha8Rng| {
        let mut u = MultiPolynomial::constant(n, ONE);
        u.add_term((0..n).map(|i| u32::from(i == 0)).collect(), complex_in_box(rng, 0.1));
        u
    };
    let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
    let g = &linear_form_through(rng, l0) * &unit(&mut inner);
    let f = &linear_form_through(rng, &l1) * &unit(&mut inner);
    NonsingularData { h, f, g }
}

/// A monic-up-to-scale univariate polynomial whose roots keep distance at
/// least `gap` from the unit circle.
pub fn disc_polynomial(rng: &mut impl Rng, degree: usize, gap: f64) -> MultiPolynomial {
    let mut coeffs = vec![complex_in_box(rng, 1.0) + c64(1.5, 0.0)];
    for _ in 0..degree {
        let inside = rng.gen_bool(0.6);
        let r = if inside {
            rng.gen_range(0.0..(1.0 - gap))
        } else {
            rng.gen_range((1.0 + gap)..2.0)
        };
        let root = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        coeffs = crate::poly::univariate::mul(&coeffs, &[-root, ONE]);
    }
    MultiPolynomial::univariate(&coeffs)
}

/// A plane system `(x^a + c_1 y^p + t_1, y^b + c_2 x^q + t_2)` with small
/// coefficients `c_i` and higher-order terms `t_i`, so its other zeros lie
/// far from the origin.
#[derive(Clone, Debug)]
pub struct PlaneSystem {
    pub g: [MultiPolynomial; 2],
    /// Leading exponents `(a, b)`.
    pub orders: (u32, u32),
}

pub fn plane_system(rng: &mut impl Rng, max_multiplicity: u32) -> PlaneSystem {
    let (a, b) = loop {
        let a = rng.gen_range(1..=4u32);
        let b = rng.gen_range(1..=4u32);
        if a * b <= max_multiplicity {
            break (a, b);
        }
    };
    let term = |rng: &mut dyn rand::RngCore, i: u32, j: u32, s: f64| {
        MultiPolynomial::monomial(vec![i, j], c64(rng.gen_range(-s..s), rng.gen_range(-s..s)))
    };
    let mono = |i: u32, j: u32| MultiPolynomial::monomial(vec![i, j], ONE);
    let p = rng.gen_range((b.max(1))..=(b + 2));
    let q = rng.gen_range((a.max(1))..=(a + 2));
    let g1 = &(&mono(a, 0) + &term(rng, 0, p, 0.2)) + &term(rng, a, 1, 0.2);
    let g2 = &(&mono(0, b) + &term(rng, q, 0, 0.2)) + &term(rng, 1, b, 0.2);
    PlaneSystem {
        g: [g1, g2],
        orders: (a, b),
    }
}

/// A univariate polynomial `x^k u(x)` with a random unit `u`, lifted to the
/// plane model `h = y`.
pub fn line_function(rng: &mut impl Rng, order: u32) -> MultiPolynomial {
    let mut p = MultiPolynomial::zero(2);
    p.add_term(vec![order, 0], complex_in_box(rng, 1.0) + c64(1.5, 0.0));
    p.add_term(vec![order + 1, 0], complex_in_box(rng, 0.5));
    p.add_term(vec![order + 2, 0], complex_in_box(rng, 0.3));
    p
}

/// `Σ c_j (A_j - λ_j)`, a random linear function of the tuple vanishing at
/// the joint eigenvalue `λ`.
pub fn linear_operator_through(rng: &mut impl Rng, a: &CommutingTuple, lambda: &[Complex64]) -> ComplexMatrix {
    let dim = a.dim();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (aj, &lj) in a.matrices().iter().zip(lambda) {
        let c = complex_in_box(rng, 1.0) + c64(0.5, 0.0);
        m += (aj - ComplexMatrix::identity(dim, dim) * lj) * c;
    }
    m
}

/// A joint-torsion problem on `K(A)` with `0 ∈ Sp(A)`, where `f(A) ⊗ 1`
/// vanishes at the origin and `g(A) ⊗ 1` at another joint eigenvalue, so
/// the complex and the cone of `f` carry cohomology.
pub fn koszul_joint_problem(rng: &mut impl Rng, dim: usize, n: usize) -> (GeneratedTuple, JointTorsionProblem) {
    let mut gt = commuting_tuple(rng, dim, n, 2.min(dim));
    // Move one joint eigenvalue to the origin, where the Koszul complex
    // carries cohomology.
    let shift = gt.points[0].0.clone();
    gt.tuple = gt.tuple.translate(&shift).expect("translation keeps the tuple commuting");
    for (p, _) in &mut gt.points {
        for (z, s) in p.iter_mut().zip(&shift) {
            *z -= s;
        }
    }
    let last = gt.points.len() - 1;
    let f = linear_operator_through(rng, &gt.tuple, &gt.points[0].0);
    let g = linear_operator_through(rng, &gt.tuple, &gt.points[last].0);
    let x = build_koszul(&gt.tuple).into_complex();
    let fm = koszul_of_map(&gt.tuple, &f).expect("polynomial in the tuple commutes");
    let gm = koszul_of_map(&gt.tuple, &g).expect("polynomial in the tuple commutes");
    let problem = JointTorsionProblem::new(x, fm, gm).expect("diagonal actions commute");
    (gt, problem)
}

/// The same problem after a random unitary change of basis in every degree.
pub fn conjugated_problem(rng: &mut impl Rng, p: &JointTorsionProblem) -> JointTorsionProblem {
    let x = &p.complex;
    let u = x.degrees().map(|k| (k, random_unitary(rng, x.dim(k)))).collect();
    let y = x.conjugate_unitary(&u);
    let conj = |m: &CochainMap| m.conjugate_unitary(x, x, &u, &u);
    JointTorsionProblem {
        f: conj(&p.f),
        g: conj(&p.g),
        complex: y,
    }
}

pub fn identity_like(dim: usize) -> ComplexMatrix {
    linalg::diag(&vec![ONE; dim])
}

pub fn zero_point(n: usize) -> Vec<Complex64> {
    vec![ZERO; n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::joint_spectrum;

    #[test]
    fn generated_tuple_spectrum() {
        let mut r = rng(7);
        let gt = commuting_tuple(&mut r, 6, 2, 3);
        let sp = joint_spectrum(&gt.tuple).unwrap();
        assert_eq!(sp.len(), 3);
        for (p, size) in &gt.points {
            let found = sp
                .iter()
                .find(|s| s.point.iter().zip(p).all(|(a, b)| (a - b).norm() < 1e-6))
                .expect("joint eigenvalue recovered");
            assert_eq!(found.multiplicity, *size);
        }
    }

    #[test]
    fn disc_polynomials_avoid_the_circle() {
        let mut r = rng(3);
        for _ in 0..10 {
            let p = disc_polynomial(&mut r, 5, 0.1);
            let c = p.univariate_coefficients(0).unwrap();
            for z in crate::poly::univariate::roots(&c).unwrap() {
                assert!((z.norm() - 1.0).abs() > 0.099);
            }
        }
    }

    #[test]
    fn nonsingular_data_vanishes_where_intended() {
        let mut r = rng(11);
        let gt = commuting_tuple(&mut r, 5, 2, 3);
        let d = nonsingular_data(&mut r, &gt.points);
        let (l0, l1) = (&gt.points[0].0, &gt.points[1].0);
        assert!(d.h[0].eval(l0).unwrap().norm() < 1e-12);
        assert!(d.h[0].eval(l1).unwrap().norm() < 1e-12);
        assert!(d.g.eval(l0).unwrap().norm() < 1e-12);
        assert!(d.f.eval(l1).unwrap().norm() < 1e-12);
    }
}
