//! Seeded property batteries: sign conventions, symbol axioms and the
//! agreement of independent evaluation paths.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fredholm::{CochainComplex, CochainMap};
use crate::generate::{self, complex_in_box};
use crate::koszul::{basis, interior_mult, CommutingTuple};
use crate::linalg::{c64, diag, ComplexMatrix, RankPolicy, ONE, ZERO};
use crate::poly::plane::{constant, x, y};
use crate::poly::MultiPolynomial;
use crate::scalar::PolarScalar;
use crate::symbol::{
    carey_pincus, joint_torsion_global_disc, joint_torsion_global_matrix, symbol_axioms_check,
    tame_symbol_on_line, tame_symbol_regular, AxiomInputs, DiscModelProblem, LimitSchedule, LocalMethod,
};
use crate::torsion::{
    explicit_nonsingular_product, joint_torsion, joint_torsion_nonsingular, joint_torsion_with,
    koszul_joint_torsion, ses_determinant_iso, torsion_iso, torsion_of_map, transition_number,
    ComplementChoice, ConeSpace, JointTorsionOptions, SixTermSequence, VolumeRescale,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Signs,
    Axioms,
    Agreement,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signs" => Ok(Suite::Signs),
            "axioms" => Ok(Suite::Axioms),
            "agreement" => Ok(Suite::Agreement),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Signs => "signs",
            Suite::Axioms => "axioms",
            Suite::Agreement => "agreement",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// One property evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    /// Largest observed deviation, when the property is a tolerance check.
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder {
            suite,
            checks: Vec::new(),
        }
    }

    /// Records the worst deviation over a batch, or the first error.
    fn tolerance(&mut self, name: impl Into<String>, tol: f64, batch: Result<Vec<f64>>) {
        let name = name.into();
        let check = match batch {
            Ok(devs) => {
                let worst = devs.iter().copied().fold(0.0, f64::max);
                let finite = devs.iter().all(|d| d.is_finite());
                Check {
                    suite: self.suite,
                    name,
                    passed: finite && worst <= tol,
                    deviation: Some(worst),
                    tolerance: Some(tol),
                    detail: Some(format!("{} cases", devs.len())),
                }
            }
            Err(e) => Check {
                suite: self.suite,
                name,
                passed: false,
                deviation: None,
                tolerance: Some(tol),
                detail: Some(e.to_string()),
            },
        };
        self.checks.push(check);
    }

    fn exact(&mut self, name: impl Into<String>, outcome: Result<Option<String>>) {
        let (passed, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(why)) => (false, Some(why)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            deviation: None,
            tolerance: None,
            detail,
        });
    }
}

fn dist(a: PolarScalar, b: Complex64) -> f64 {
    match PolarScalar::from_complex(b) {
        Some(b) => a.relative_distance(b),
        None => f64::INFINITY,
    }
}

/// Runs one suite, or all of them, with every random draw pinned by `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Signs | Suite::All) {
        checks.extend(signs(seed));
    }
    if matches!(suite, Suite::Axioms | Suite::All) {
        checks.extend(axioms(seed));
    }
    if matches!(suite, Suite::Agreement | Suite::All) {
        checks.extend(agreement(seed));
    }
    VerifyReport { suite, seed, checks }
}

fn m(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows.len(), rows[0].len(), |i, j| c64(rows[i][j], 0.0))
}

fn signs(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("signs");
    let policy = RankPolicy::default();

    r.tolerance(
        "short exact sequence: standard split gives -1",
        1e-12,
        ses_determinant_iso(&m(&[&[1.0], &[0.0]]), &m(&[&[0.0, 1.0]]), &policy).map(|s| vec![dist(s, c64(-1.0, 0.0))]),
    );
    r.tolerance(
        "short exact sequence: doubled inclusion gives -1/2",
        1e-12,
        ses_determinant_iso(&m(&[&[2.0], &[0.0]]), &m(&[&[0.0, 1.0]]), &policy).map(|s| vec![dist(s, c64(-0.5, 0.0))]),
    );
    let iso = SixTermSequence {
        f_plus: m(&[&[2.0]]),
        f_minus: m(&[&[3.0]]),
        i_plus: ComplexMatrix::zeros(0, 1),
        i_minus: ComplexMatrix::zeros(0, 1),
        p_plus: ComplexMatrix::zeros(1, 0),
        p_minus: ComplexMatrix::zeros(1, 0),
    };
    r.tolerance(
        "torsion of an isomorphism sequence is det f- / det f+",
        1e-12,
        torsion_iso(&iso, ComplementChoice::Orthogonal, &policy).map(|s| vec![dist(s, c64(1.5, 0.0))]),
    );
    let point = CochainComplex::concentrated(0, 1);
    let scalar = |a: f64| CochainMap::from_components(0, vec![m(&[&[a]])]);
    r.tolerance(
        "torsion of a scalar map on a point is its reciprocal",
        1e-12,
        [2.0, -3.0, 0.5]
            .iter()
            .map(|&a| {
                torsion_of_map(&point, &point, &scalar(a), ComplementChoice::Orthogonal, &policy)
                    .map(|s| dist(s, c64(1.0 / a, 0.0)))
            })
            .collect(),
    );

    r.exact("interior multiplications anticommute for n <= 6", anticommutation(6));

    let mut rng = generate::rng(seed);
    let mut complement_devs = Vec::new();
    let mut rescale_devs = Vec::new();
    let mut unitary_devs = Vec::new();
    let outcome: Result<()> = (|| {
        for case in 0..8 {
            let (_, p) = generate::koszul_joint_problem(&mut rng, 2 + case % 2, 2);
            let base = joint_torsion(&p, &policy)?;
            let randomized = joint_torsion_with(
                &p,
                &JointTorsionOptions {
                    policy,
                    complements: ComplementChoice::Randomized { seed: rng.gen() },
                    rescale: Vec::new(),
                },
            )?;
            complement_devs.push(randomized.value.relative_distance(base));
            let rescaled = joint_torsion_with(
                &p,
                &JointTorsionOptions {
                    policy,
                    complements: ComplementChoice::Orthogonal,
                    rescale: vec![VolumeRescale {
                        space: ConeSpace::ConeF,
                        degree: first_nonzero_degree(&p.complex, &p.f, &policy).unwrap_or(0),
                        factor: c64(5.0, 0.0),
                    }],
                },
            )?;
            rescale_devs.push(rescaled.value.relative_distance(base));
            let conj = generate::conjugated_problem(&mut rng, &p);
            unitary_devs.push(joint_torsion(&conj, &policy)?.relative_distance(base));
        }
        Ok(())
    })();
    let batch = |v: Vec<f64>| outcome.clone().map(|_| v);
    r.tolerance("joint torsion ignores the choice of complements", 1e-9, batch(complement_devs));
    r.tolerance("joint torsion ignores reference volumes", 1e-10, batch(rescale_devs));
    r.tolerance("joint torsion is invariant under unitary conjugation", 1e-9, batch(unitary_devs));

    let z = MultiPolynomial::univariate_real(&[0.0, 1.0]);
    r.tolerance(
        "regular symbol c(z, z) = -1",
        1e-12,
        tame_symbol_regular(&z, &z, ZERO).map(|s| vec![dist(s, c64(-1.0, 0.0))]),
    );
    r.tolerance(
        "limit symbol c(z, z) = -1 on h = y",
        1e-6,
        tame_symbol_on_line(&z, &z, ZERO, &LimitSchedule { seed, ..Default::default() })
            .map(|s| vec![dist(s.value, c64(-1.0, 0.0))]),
    );
    r.tolerance(
        "Carey-Pincus product for f = g = z is -1",
        1e-12,
        DiscModelProblem::new(z.clone(), z.clone())
            .and_then(|p| carey_pincus(&p))
            .map(|s| vec![dist(s, c64(-1.0, 0.0))]),
    );

    let a = CommutingTuple::new(vec![diag(&[ONE, ZERO, c64(2.0, 0.0)])]).expect("diagonal tuple");
    let g = vec![MultiPolynomial::univariate_real(&[0.0, 1.0]), MultiPolynomial::univariate_real(&[-1.0, 1.0])];
    r.tolerance(
        "transition numbers on the diagonal satisfy tau_ii = 1",
        1e-10,
        (0..2)
            .map(|i| transition_number(&a, &g, i, i, &policy).map(|t| dist(t, ONE)))
            .collect(),
    );
    r.checks
}

fn first_nonzero_degree(x: &CochainComplex, f: &CochainMap, policy: &RankPolicy) -> Option<i32> {
    let cone = crate::fredholm::mapping_cone_unchecked(x, x, f);
    let h = crate::fredholm::cohomology(&cone.cone, policy);
    h.dims().into_iter().find(|&(_, d)| d > 0).map(|(k, _)| k)
}

fn anticommutation(max_n: usize) -> Result<Option<String>> {
    for n in 1..=max_n {
        for k in 0..=n {
            for idx in basis(n, k) {
                for i in 1..=n {
                    for j in 1..=n {
                        let first = interior_mult(j, &idx)?;
                        let ij = match first {
                            Some((s, rest)) => interior_mult(i, &rest)?.map(|(t, out)| (s * t, out)),
                            None => None,
                        };
                        let first = interior_mult(i, &idx)?;
                        let ji = match first {
                            Some((s, rest)) => interior_mult(j, &rest)?.map(|(t, out)| (s * t, out)),
                            None => None,
                        };
                        let ok = if i == j {
                            ij.is_none()
                        } else {
                            match (&ij, &ji) {
                                (None, None) => true,
                                (Some((s, a)), Some((t, b))) => a == b && *s == -*t,
                                _ => false,
                            }
                        };
                        if !ok {
                            return Ok(Some(format!("n = {n}, i = {i}, j = {j}, index {:?}", idx.subset())));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Inputs of the axiom battery number `case` on the line `h = y`.
pub fn axiom_inputs(rng: &mut impl Rng) -> AxiomInputs {
    let order = |rng: &mut dyn rand::RngCore| rng.gen_range(0..=2u32);
    let (o1, o2, o3) = (order(rng), order(rng), order(rng));
    let f1 = generate::line_function(rng, o1);
    let f2 = generate::line_function(rng, o2);
    let f3 = generate::line_function(rng, o3);
    let mut t = generate::line_function(rng, 1);
    // Keep 1 - t away from zero near the origin.
    t = t.scale(c64(0.5, 0.0) / t.coefficient(&[1, 0]));
    AxiomInputs {
        h: y(),
        f1,
        f2,
        f3,
        t,
        point: generate::zero_point(2),
    }
}

fn axioms(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("axioms");
    let mut rng = generate::rng(seed ^ 0xA710);
    let schedule = LimitSchedule { seed, ..Default::default() };
    let mut anti = Vec::new();
    let mut multi = Vec::new();
    let mut stein = Vec::new();
    let outcome: Result<()> = (|| {
        for _ in 0..10 {
            let report = symbol_axioms_check(&axiom_inputs(&mut rng), &schedule)?;
            anti.push(report.antisymmetry.deviation);
            multi.push(report.multiplicativity.deviation);
            stein.push(report.steinberg.deviation);
        }
        Ok(())
    })();
    let batch = |v: Vec<f64>| outcome.clone().map(|_| v);
    r.tolerance("antisymmetry c(f, g) c(g, f) = 1", 1e-6, batch(anti));
    r.tolerance("multiplicativity in the second slot", 1e-6, batch(multi));
    r.tolerance("Steinberg relation c(t, 1 - t) = 1", 1e-6, batch(stein));

    let cusp = AxiomInputs {
        h: &y().pow(2) - &x().pow(3),
        f1: x(),
        f2: y(),
        f3: &constant(1.0) + &x(),
        t: x(),
        point: generate::zero_point(2),
    };
    r.tolerance(
        "axioms on the cusp",
        1e-6,
        symbol_axioms_check(&cusp, &schedule).map(|rep| vec![rep.max_deviation()]),
    );
    r.checks
}

fn agreement(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("agreement");
    let policy = RankPolicy::default();
    let mut rng = generate::rng(seed ^ 0xA6EE);

    let mut jt_vs_lefschetz = Vec::new();
    let mut jt_vs_explicit = Vec::new();
    let outcome: Result<()> = (|| {
        for case in 0..10 {
            let n = 1 + case % 3;
            let dim = 3 + case % 4;
            let gt = generate::commuting_tuple(&mut rng, dim, n, 3);
            let d = generate::nonsingular_data(&mut rng, &gt.points);
            let jt = koszul_joint_torsion(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
            let lq = joint_torsion_nonsingular(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
            let ex = explicit_nonsingular_product(&gt.tuple, &d.h, &d.f, &d.g, &policy)?;
            jt_vs_lefschetz.push(jt.relative_distance(lq));
            jt_vs_explicit.push(jt.relative_distance(ex));
        }
        Ok(())
    })();
    let batch = |v: Vec<f64>| outcome.clone().map(|_| v);
    r.tolerance("joint torsion equals the Lefschetz quotient", 1e-9, batch(jt_vs_lefschetz));
    r.tolerance("joint torsion equals the explicit spectral product", 1e-8, batch(jt_vs_explicit));

    r.tolerance(
        "Carey-Pincus equals the global symbol product on the disc",
        1e-6,
        (0..10)
            .map(|_| {
                let (df, dg) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
                let f = generate::disc_polynomial(&mut rng, df, 0.1);
                let g = generate::disc_polynomial(&mut rng, dg, 0.1);
                let p = DiscModelProblem::new(f, g)?;
                let cp = carey_pincus(&p)?;
                let global = joint_torsion_global_disc(&p.swapped(), LocalMethod::Regular)?;
                Ok(cp.relative_distance(global.value))
            })
            .collect(),
    );
    r.tolerance(
        "regular and limit local symbols agree on the line",
        1e-6,
        (0..5)
            .map(|_| {
                let f = generate::disc_polynomial(&mut rng, 3, 0.1);
                let g = generate::disc_polynomial(&mut rng, 3, 0.1);
                let p = DiscModelProblem::new(f, g)?;
                let regular = joint_torsion_global_disc(&p, LocalMethod::Regular)?;
                let limit = joint_torsion_global_disc(&p, LocalMethod::Limit(LimitSchedule { seed, ..Default::default() }))?;
                Ok(regular.value.relative_distance(limit.value))
            })
            .collect(),
    );
    r.tolerance(
        "global product on matrix models equals joint torsion",
        1e-6,
        (0..5)
            .map(|case| {
                let n = 1 + case % 2;
                let gt = generate::commuting_tuple(&mut rng, 4, n, 2);
                let l0 = gt.points[0].0.clone();
                let h: Vec<MultiPolynomial> = (1..n).map(|_| generate::linear_form_through(&mut rng, &l0)).collect();
                let f = generate::linear_form_through(&mut rng, &l0);
                let shift: Vec<Complex64> = l0.iter().map(|z| z + complex_in_box(&mut rng, 0.1)).collect();
                let g = generate::linear_form_through(&mut rng, &shift);
                let jt = koszul_joint_torsion(&gt.tuple, &h, &f, &g, &policy)?;
                let global = joint_torsion_global_matrix(&gt.tuple, &h, &f, &g, &LimitSchedule::default(), &policy)?;
                Ok(jt.relative_distance(global.value))
            })
            .collect(),
    );
    r.checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_suite_passes() {
        let report = run_suite(Suite::Signs, 42);
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Signs, Suite::Axioms, Suite::Agreement, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
