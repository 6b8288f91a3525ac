//! Short and six-term exact sequences and their determinant isomorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graded::{ses_sign, torsion_sign_exponent, ComplementDims, GradedLineElement};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, hstack, max_abs, op_norm, ComplexMatrix, RankPolicy};
use crate::scalar::PolarScalar;

/// The six induced maps of an exact triangle of Z/2-graded spaces
///
/// ```text
/// V1+ --f+--> V2+ --i+--> V+ --p+--> V1-
/// V1- --f--> V2- --i--> V- --p--> V1+
/// ```
///
/// written in the reference bases of each space.
#[derive(Clone, Debug, PartialEq)]
pub struct SixTermSequence {
    pub f_plus: ComplexMatrix,
    pub f_minus: ComplexMatrix,
    pub i_plus: ComplexMatrix,
    pub i_minus: ComplexMatrix,
    pub p_plus: ComplexMatrix,
    pub p_minus: ComplexMatrix,
}

/// How the complements of the six kernels are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ComplementChoice {
    /// Orthogonal complements (the row spaces).
    #[default]
    Orthogonal,
    /// A seeded random complement: the row space tilted by a random map into
    /// the kernel and mixed by a random invertible matrix.
    Randomized { seed: u64 },
}

impl SixTermSequence {
    /// `(incoming, outgoing, name)` for each of the six nodes.
    fn nodes(&self) -> [(&ComplexMatrix, &ComplexMatrix, &'static str); 6] {
        [
            (&self.f_plus, &self.i_plus, "V2+"),
            (&self.i_plus, &self.p_plus, "V+"),
            (&self.p_plus, &self.f_minus, "V1-"),
            (&self.f_minus, &self.i_minus, "V2-"),
            (&self.i_minus, &self.p_minus, "V-"),
            (&self.p_minus, &self.f_plus, "V1+"),
        ]
    }

    /// Checks composability of shapes and exactness at every node: the
    /// composite vanishes and `rank(in) + rank(out) = dim(node)`.
    pub fn check_exact(&self, policy: &RankPolicy) -> Result<()> {
        for (incoming, outgoing, name) in self.nodes() {
            if incoming.nrows() != outgoing.ncols() {
                return Err(Error::shape(
                    format!("six-term node {name}"),
                    incoming.nrows(),
                    outgoing.ncols(),
                ));
            }
            let dim = incoming.nrows();
            let composite = max_abs(&(outgoing * incoming));
            let scale = 1.0 + op_norm(incoming) * op_norm(outgoing);
            if composite > 1e-8 * scale {
                return Err(Error::NotExact {
                    node: name.to_string(),
                    detail: format!("composite of consecutive maps has size {composite:.3e}"),
                });
            }
            let r_in = linalg::rank(incoming, policy).rank;
            let r_out = linalg::rank(outgoing, policy).rank;
            if r_in + r_out != dim {
                return Err(Error::NotExact {
                    node: name.to_string(),
                    detail: format!(
                        "image has rank {r_in} but the outgoing kernel has dimension {}",
                        dim - r_out
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> SixTermDims {
        SixTermDims {
            v1_plus: self.f_plus.ncols(),
            v1_minus: self.f_minus.ncols(),
            v2_plus: self.f_plus.nrows(),
            v2_minus: self.f_minus.nrows(),
            v_plus: self.i_plus.nrows(),
            v_minus: self.i_minus.nrows(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SixTermDims {
    pub v1_plus: usize,
    pub v1_minus: usize,
    pub v2_plus: usize,
    pub v2_minus: usize,
    pub v_plus: usize,
    pub v_minus: usize,
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// A basis (as columns) of a complement of `ker m`.
fn complement(m: &ComplexMatrix, policy: &RankPolicy, rng: Option<&mut ChaCha8Rng>) -> ComplexMatrix {
    let row_space = linalg::coimage(m, policy).basis;
    let Some(rng) = rng else {
        return row_space;
    };
    let r = row_space.ncols();
    if r == 0 {
        return row_space;
    }
    let ker = linalg::kernel(m, policy).basis;
    let tilted = if ker.ncols() > 0 {
        &row_space + &ker * random_matrix(rng, ker.ncols(), r)
    } else {
        row_space
    };
    // Diagonally dominant mixing keeps the random basis well conditioned.
    let mixing = random_matrix(rng, r, r) * c64(0.5, 0.0) + ComplexMatrix::identity(r, r) * c64(2.0, 0.0);
    tilted * mixing
}

fn volume_det(cols: &[&ComplexMatrix], what: &str) -> Result<PolarScalar> {
    let rows = cols.iter().map(|c| c.nrows()).max().unwrap_or(0);
    let m = hstack(cols, rows);
    if m.nrows() != m.ncols() {
        return Err(Error::Numerical(format!(
            "{what}: basis has {} vectors in a space of dimension {}",
            m.ncols(),
            m.nrows()
        )));
    }
    linalg::log_det(&m).ok_or_else(|| Error::Singular(format!("{what}: basis vectors are dependent")))
}

/// The scalar `s` with `|V|(vol V2) = s · vol V1 ⊗ vol V`, where all
/// volumes are the wedge products of the reference bases.
///
/// For complements `t` of the six kernels, the defining relation reads
/// `|V|( (f+ t1+ ∧ t2+) ⊗ (f- t1- ∧ t2-)^* ) = (-1)^μ (p- t- ∧ t1+) ⊗ (p+ t+ ∧ t1-)^* ⊗ (i+ t2+ ∧ t+) ⊗ (i- t2- ∧ t-)^*`;
/// each wedge is a determinant against the reference basis.
pub fn torsion_iso(
    seq: &SixTermSequence,
    choice: ComplementChoice,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    seq.check_exact(policy)?;
    let mut rng = match choice {
        ComplementChoice::Orthogonal => None,
        ComplementChoice::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut comp = |m: &ComplexMatrix| complement(m, policy, rng.as_mut());
    let t1p = comp(&seq.f_plus);
    let t2p = comp(&seq.i_plus);
    let tp = comp(&seq.p_plus);
    let t1m = comp(&seq.f_minus);
    let t2m = comp(&seq.i_minus);
    let tm = comp(&seq.p_minus);

    let a2p = volume_det(&[&(&seq.f_plus * &t1p), &t2p], "V2+")?;
    let a2m = volume_det(&[&(&seq.f_minus * &t1m), &t2m], "V2-")?;
    let a1p = volume_det(&[&(&seq.p_minus * &tm), &t1p], "V1+")?;
    let a1m = volume_det(&[&(&seq.p_plus * &tp), &t1m], "V1-")?;
    let ap = volume_det(&[&(&seq.i_plus * &t2p), &tp], "V+")?;
    let am = volume_det(&[&(&seq.i_minus * &t2m), &tm], "V-")?;

    let d = seq.dims();
    let vol = GradedLineElement::volume;
    let lhs = vol(a2p, d.v2_plus).tensor(vol(a2m, d.v2_minus).dual());
    let rhs = vol(a1p, d.v1_plus)
        .tensor(vol(a1m, d.v1_minus).dual())
        .tensor(vol(ap, d.v_plus))
        .tensor(vol(am, d.v_minus).dual());
    let mu = torsion_sign_exponent(ComplementDims {
        t1_plus: t1p.ncols(),
        t1_minus: t1m.ncols(),
        t2_plus: t2p.ncols(),
        t2_minus: t2m.ncols(),
        t_plus: tp.ncols(),
        t_minus: tm.ncols(),
    });
    Ok(PolarScalar::sign(mu % 2 == 1) * rhs.ratio(lhs)?)
}

/// The scalar `s` with `|Δ|(vol W) = s · vol V ⊗ vol Z` for a short exact
/// sequence `0 -> V --inclusion--> W --projection--> Z -> 0` with standard
/// reference volumes.
///
/// With `w_j` any lifts of the standard basis of `Z`, the isomorphism sends
/// `ι(e) ∧ w` to `(-1)^{dim V · dim Z} e ⊗ π(w)`.
pub fn ses_determinant_iso(
    inclusion: &ComplexMatrix,
    projection: &ComplexMatrix,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let (dw, dv) = inclusion.shape();
    let dz = projection.nrows();
    if projection.ncols() != dw {
        return Err(Error::shape("short exact sequence", dw, projection.ncols()));
    }
    if dv + dz != dw {
        return Err(Error::NotExact {
            node: "W".into(),
            detail: format!("dim W = {dw} but dim V + dim Z = {}", dv + dz),
        });
    }
    let composite = max_abs(&(projection * inclusion));
    if composite > 1e-8 * (1.0 + op_norm(projection) * op_norm(inclusion)) {
        return Err(Error::NotExact {
            node: "W".into(),
            detail: format!("projection ∘ inclusion has size {composite:.3e}"),
        });
    }
    if linalg::rank(inclusion, policy).rank != dv {
        return Err(Error::NotExact {
            node: "V".into(),
            detail: "inclusion is not injective".into(),
        });
    }
    if linalg::rank(projection, policy).rank != dz {
        return Err(Error::NotExact {
            node: "Z".into(),
            detail: "projection is not surjective".into(),
        });
    }
    // Minimal-norm lifts of the standard basis of Z.
    let lifts = if dz == 0 {
        ComplexMatrix::zeros(dw, 0)
    } else {
        let gram = projection * projection.adjoint();
        let inv = gram
            .try_inverse()
            .ok_or_else(|| Error::Singular("projection Gram matrix".into()))?;
        projection.adjoint() * inv
    };
    let d = volume_det(&[inclusion, &lifts], "W")?;
    Ok(ses_sign(dv, dz) * d.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;
    use num_complex::Complex64;

    fn scalar(z: PolarScalar) -> Complex64 {
        z.to_complex()
    }

    #[test]
    fn ses_identity_and_standard_split() {
        let p = RankPolicy::default();
        let id = ComplexMatrix::identity(2, 2);
        let s = ses_determinant_iso(&ComplexMatrix::zeros(2, 0), &id, &p).unwrap();
        assert!((scalar(s) - c64(1.0, 0.0)).norm() < 1e-14);
        let incl = real_matrix(&[&[1.0], &[0.0]]);
        let proj = real_matrix(&[&[0.0, 1.0]]);
        let s = ses_determinant_iso(&incl, &proj, &p).unwrap();
        assert!((scalar(s) - c64(-1.0, 0.0)).norm() < 1e-14);
        let s = ses_determinant_iso(&(incl * c64(2.0, 0.0)), &proj, &p).unwrap();
        assert!((scalar(s) - c64(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn ses_rejects_non_exact() {
        let p = RankPolicy::default();
        let incl = real_matrix(&[&[1.0], &[0.0]]);
        let proj = real_matrix(&[&[1.0, 1.0]]);
        assert!(ses_determinant_iso(&incl, &proj, &p).is_err());
    }

    fn isomorphism_sequence(fp: f64, fm: f64) -> SixTermSequence {
        SixTermSequence {
            f_plus: real_matrix(&[&[fp]]),
            f_minus: real_matrix(&[&[fm]]),
            i_plus: ComplexMatrix::zeros(0, 1),
            i_minus: ComplexMatrix::zeros(0, 1),
            p_plus: ComplexMatrix::zeros(1, 0),
            p_minus: ComplexMatrix::zeros(1, 0),
        }
    }

    #[test]
    fn isomorphism_torsion_is_determinant_quotient() {
        let p = RankPolicy::default();
        let s = torsion_iso(&isomorphism_sequence(2.0, 3.0), ComplementChoice::Orthogonal, &p).unwrap();
        assert!((scalar(s) - c64(1.5, 0.0)).norm() < 1e-13);
        let s = torsion_iso(&isomorphism_sequence(1.0, 1.0), ComplementChoice::Orthogonal, &p).unwrap();
        assert!((scalar(s) - c64(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn randomized_complements_agree() {
        let p = RankPolicy::default();
        let seq = isomorphism_sequence(2.0, -5.0);
        let a = torsion_iso(&seq, ComplementChoice::Orthogonal, &p).unwrap();
        let b = torsion_iso(&seq, ComplementChoice::Randomized { seed: 9 }, &p).unwrap();
        assert!(a.relative_distance(b) < 1e-12);
    }
}
