//! Joint torsion of two commuting cochain endomorphisms.
//!
//! For commuting `f, g : X -> X`, the map `g` induces
//! `δ(g) = diag(g^{k+1}, g^k)` on the cone `C_f`, and symmetrically `δ(f)`
//! acts on `C_g`. Both double cones have the same spaces
//! `X^{k+2} ⊕ X^{k+1} ⊕ X^{k+1} ⊕ X^k`, and the cochain isomorphism
//!
//! ```text
//! Φ^k = [[-1, 0, 0, 0],
//!        [ 0, 0, 1, 0],
//!        [ 0, 1, 0, 0],
//!        [ 0, 0, 0, 1]] : C_{δ(g)} -> C_{δ(f)}
//! ```
//!
//! identifies them. The joint torsion is the scalar
//! `JT = τ(δ(g)) · (det H^+(Φ) / det H^-(Φ)) / τ(δ(f))`, where `τ` is the
//! torsion of a map. Each `τ(δ(·))` is an endomorphism torsion relative to
//! the same volume on source and target, and every line involved sits in
//! degree zero, so reference volumes cancel and no pairing signs arise.

use num_complex::Complex64;

use super::sequence::{torsion_iso, ComplementChoice};
use crate::error::{Error, Result};
use crate::fredholm::{
    self, cohomology, mapping_cone_unchecked, six_term_sequence, CochainComplex, CochainMap,
    CohomologyData, MappingCone,
};
use crate::linalg::{self, ComplexMatrix, RankPolicy};
use crate::scalar::PolarScalar;

/// A complex with two commuting cochain endomorphisms.
#[derive(Clone, Debug)]
pub struct JointTorsionProblem {
    pub complex: CochainComplex,
    pub f: CochainMap,
    pub g: CochainMap,
}

impl JointTorsionProblem {
    /// Validates that `f` and `g` are cochain maps that commute.
    pub fn new(complex: CochainComplex, f: CochainMap, g: CochainMap) -> Result<Self> {
        f.validate(&complex, &complex, fredholm::DEFAULT_CHAIN_TOL)?;
        g.validate(&complex, &complex, fredholm::DEFAULT_CHAIN_TOL)?;
        f.check_commutes(&g, &complex, fredholm::DEFAULT_CHAIN_TOL)?;
        Ok(JointTorsionProblem { complex, f, g })
    }
}

/// The four auxiliary complexes whose reference volumes enter the
/// computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSpace {
    /// `C_f`
    ConeF,
    /// `C_g`
    ConeG,
    /// `C_{δ(g)}`, the cone of `δ(g)` on `C_f`
    ConeDeltaG,
    /// `C_{δ(f)}`, the cone of `δ(f)` on `C_g`
    ConeDeltaF,
}

/// Multiplies the first cohomology basis vector of one degree of one
/// auxiliary complex by `factor`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeRescale {
    pub space: ConeSpace,
    pub degree: i32,
    pub factor: Complex64,
}

#[derive(Clone, Debug, Default)]
pub struct JointTorsionOptions {
    pub policy: RankPolicy,
    pub complements: ComplementChoice,
    pub rescale: Vec<VolumeRescale>,
}

#[derive(Clone, Debug)]
pub struct JointTorsionReport {
    pub value: PolarScalar,
    /// Torsion of `δ(g)` on `C_f`.
    pub torsion_delta_g: PolarScalar,
    /// Torsion of `δ(f)` on `C_g`.
    pub torsion_delta_f: PolarScalar,
    /// `det H^+(Φ) / det H^-(Φ)`.
    pub cone_swap: PolarScalar,
    pub ambiguous: bool,
}

fn delta(x: &CochainComplex, g: &CochainMap, cone: &CochainComplex) -> CochainMap {
    CochainMap::from_fn(cone, |k| {
        linalg::block_diag(&[g.between(k + 1, x, x), g.between(k, x, x)])
    })
}

fn cone_swap_map(x: &CochainComplex, source: &CochainComplex) -> CochainMap {
    CochainMap::from_fn(source, |k| {
        let (a, b, c) = (x.dim(k + 2), x.dim(k + 1), x.dim(k));
        let n = a + 2 * b + c;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..a {
            m[(i, i)] = -linalg::ONE;
        }
        m.view_mut((a, a + b), (b, b)).fill_with_identity();
        m.view_mut((a + b, a), (b, b)).fill_with_identity();
        m.view_mut((a + 2 * b, a + 2 * b), (c, c)).fill_with_identity();
        m
    })
}

struct ConeData {
    cone: MappingCone,
    h: CohomologyData,
    delta: CochainMap,
    double: MappingCone,
    h_double: CohomologyData,
}

fn build(x: &CochainComplex, first: &CochainMap, second: &CochainMap, policy: &RankPolicy) -> ConeData {
    let cone = mapping_cone_unchecked(x, x, first);
    let h = cohomology(&cone.cone, policy);
    let delta = delta(x, second, &cone.cone);
    let double = mapping_cone_unchecked(&cone.cone, &cone.cone, &delta);
    let h_double = cohomology(&double.cone, policy);
    ConeData {
        cone,
        h,
        delta,
        double,
        h_double,
    }
}

fn apply_rescale(data: &mut ConeData, r: &VolumeRescale, double: bool) -> Result<()> {
    if double {
        data.h_double.rescale(r.degree, 0, r.factor)
    } else {
        data.h.rescale(r.degree, 0, r.factor)
    }
}

fn delta_torsion(data: &ConeData, opts: &JointTorsionOptions) -> Result<PolarScalar> {
    let c = &data.cone.cone;
    let seq = six_term_sequence(c, c, &data.delta, &data.double, &data.h, &data.h, &data.h_double);
    torsion_iso(&seq, opts.complements, &opts.policy)
}

/// Joint torsion with default options.
pub fn joint_torsion(problem: &JointTorsionProblem, policy: &RankPolicy) -> Result<PolarScalar> {
    let opts = JointTorsionOptions {
        policy: *policy,
        ..Default::default()
    };
    joint_torsion_with(problem, &opts).map(|r| r.value)
}

/// Joint torsion with explicit complement and reference-volume choices.
pub fn joint_torsion_with(
    problem: &JointTorsionProblem,
    opts: &JointTorsionOptions,
) -> Result<JointTorsionReport> {
    let x = &problem.complex;
    let mut on_f = build(x, &problem.f, &problem.g, &opts.policy);
    let mut on_g = build(x, &problem.g, &problem.f, &opts.policy);
    for r in &opts.rescale {
        match r.space {
            ConeSpace::ConeF => apply_rescale(&mut on_f, r, false)?,
            ConeSpace::ConeDeltaG => apply_rescale(&mut on_f, r, true)?,
            ConeSpace::ConeG => apply_rescale(&mut on_g, r, false)?,
            ConeSpace::ConeDeltaF => apply_rescale(&mut on_g, r, true)?,
        }
    }
    let torsion_delta_g = delta_torsion(&on_f, opts)?;
    let torsion_delta_f = delta_torsion(&on_g, opts)?;

    let source = &on_f.double.cone;
    let target = &on_g.double.cone;
    if source.dims() != target.dims() || source.start() != target.start() {
        return Err(Error::Numerical("double cones have different shapes".into()));
    }
    let phi = cone_swap_map(x, source);
    phi.validate(source, target, fredholm::DEFAULT_CHAIN_TOL)
        .map_err(|e| Error::Numerical(format!("cone swap is not a cochain map: {e}")))?;
    let parity_det = |parity: i32| -> Result<PolarScalar> {
        let blocks: Vec<ComplexMatrix> = source
            .degrees()
            .filter(|k| k.rem_euclid(2) == parity)
            .map(|k| {
                CohomologyData::induced(&on_f.h_double, k, &on_g.h_double, k, &phi.between(k, source, target))
            })
            .collect();
        linalg::log_det(&linalg::block_diag(&blocks))
            .ok_or_else(|| Error::Singular("cone swap on cohomology".into()))
    };
    let cone_swap = parity_det(0)? / parity_det(1)?;
    let ambiguous = on_f.h.ambiguous || on_g.h.ambiguous || on_f.h_double.ambiguous || on_g.h_double.ambiguous;
    Ok(JointTorsionReport {
        value: torsion_delta_g * cone_swap / torsion_delta_f,
        torsion_delta_g,
        torsion_delta_f,
        cone_swap,
        ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, real_matrix};

    fn point_problem(a: f64, b: f64) -> JointTorsionProblem {
        let x = CochainComplex::concentrated(0, 1);
        let f = CochainMap::from_components(0, vec![real_matrix(&[&[a]])]);
        let g = CochainMap::from_components(0, vec![real_matrix(&[&[b]])]);
        JointTorsionProblem::new(x, f, g).unwrap()
    }

    #[test]
    fn scalars_on_a_point() {
        let p = RankPolicy::default();
        for (a, b) in [(2.0, 3.0), (0.0, 0.0), (0.0, 3.0), (2.0, 0.0)] {
            let v = joint_torsion(&point_problem(a, b), &p).unwrap();
            assert!((v.to_complex() - c64(1.0, 0.0)).norm() < 1e-12, "({a}, {b})");
        }
    }

    #[test]
    fn cone_swap_sign_is_visible() {
        // For f = g = 0 on a point both endomorphism torsions equal 1 and the
        // swap contributes exactly the value.
        let r = joint_torsion_with(&point_problem(0.0, 0.0), &JointTorsionOptions::default()).unwrap();
        assert!((r.cone_swap.to_complex() - r.value.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn non_commuting_maps_rejected() {
        let x = CochainComplex::concentrated(0, 2);
        let f = CochainMap::from_components(0, vec![real_matrix(&[&[0.0, 1.0], &[0.0, 0.0]])]);
        let g = CochainMap::from_components(0, vec![real_matrix(&[&[0.0, 0.0], &[1.0, 0.0]])]);
        assert!(matches!(
            JointTorsionProblem::new(x, f, g),
            Err(Error::MapsDoNotCommute { .. })
        ));
    }

    #[test]
    fn rescaling_volumes_leaves_value_unchanged() {
        let x = CochainComplex::concentrated(0, 2);
        let n = real_matrix(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let f = CochainMap::from_components(0, vec![n.clone()]);
        let g = CochainMap::from_components(0, vec![&n * c64(3.0, 0.0)]);
        let problem = JointTorsionProblem::new(x, f, g).unwrap();
        let base = joint_torsion_with(&problem, &JointTorsionOptions::default()).unwrap();
        let opts = JointTorsionOptions {
            rescale: vec![
                VolumeRescale { space: ConeSpace::ConeF, degree: 0, factor: c64(5.0, 0.0) },
                VolumeRescale { space: ConeSpace::ConeDeltaF, degree: -1, factor: c64(0.0, 2.0) },
            ],
            ..Default::default()
        };
        let scaled = joint_torsion_with(&problem, &opts).unwrap();
        assert!(scaled.value.relative_distance(base.value) < 1e-12);
    }
}
