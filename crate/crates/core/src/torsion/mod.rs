//! Graded-line arithmetic, torsion isomorphisms, joint torsion,
//! multiplicative Lefschetz numbers and transition numbers.

mod graded;
mod joint;
mod nonsingular;
mod sequence;

pub use graded::{
    commutativity_sign, ses_sign, torsion_sign_exponent, ComplementDims, GradedLineElement,
};
pub use joint::{
    joint_torsion, joint_torsion_with, ConeSpace, JointTorsionOptions, JointTorsionProblem,
    JointTorsionReport, VolumeRescale,
};
pub use nonsingular::{
    explicit_nonsingular_product, joint_torsion_nonsingular, koszul_joint_torsion,
    transition_number,
};
pub use sequence::{
    ses_determinant_iso, torsion_iso, ComplementChoice, SixTermDims, SixTermSequence,
};

use crate::error::{Error, Result};
use crate::fredholm::{self, CochainComplex, CochainMap, CohomologyData};
use crate::linalg::{self, ComplexMatrix, RankPolicy};
use crate::scalar::PolarScalar;

/// Torsion of a cochain map `f : X -> Y`: the torsion isomorphism of its
/// six-term sequence, relative to the harmonic reference volumes of `|X|`,
/// `|Y|` and `|C_f|`.
pub fn torsion_of_map(
    x: &CochainComplex,
    y: &CochainComplex,
    f: &CochainMap,
    choice: ComplementChoice,
    policy: &RankPolicy,
) -> Result<PolarScalar> {
    let st = fredholm::six_term(x, y, f, policy)?;
    torsion_iso(&st.sequence, choice, policy)
}

/// Value of a multiplicative Lefschetz number with its conditioning.
#[derive(Clone, Debug)]
pub struct Lefschetz {
    pub value: PolarScalar,
    /// Smallest reciprocal condition number of `H^+(f)` and `H^-(f)`.
    pub inverse_condition: f64,
    pub warning: Option<String>,
}

/// Block-diagonal matrix of the induced map on `H^+` (`parity = 0`) or
/// `H^-` (`parity = 1`).
pub fn induced_parity_map(
    x: &CochainComplex,
    h: &CohomologyData,
    f: &CochainMap,
    parity: i32,
) -> ComplexMatrix {
    let blocks: Vec<ComplexMatrix> = x
        .degrees()
        .filter(|k| k.rem_euclid(2) == parity)
        .map(|k| CohomologyData::induced(h, k, h, k, &f.between(k, x, x)))
        .collect();
    linalg::block_diag(&blocks)
}

/// `det H^+(f) / det H^-(f)` for an endomorphism `f` of `X`.
pub fn lefschetz(x: &CochainComplex, f: &CochainMap, policy: &RankPolicy) -> Result<Lefschetz> {
    f.validate(x, x, fredholm::DEFAULT_CHAIN_TOL)?;
    let h = fredholm::cohomology(x, policy);
    lefschetz_with(x, f, &h)
}

pub(crate) fn lefschetz_with(x: &CochainComplex, f: &CochainMap, h: &CohomologyData) -> Result<Lefschetz> {
    let plus = induced_parity_map(x, h, f, 0);
    let minus = induced_parity_map(x, h, f, 1);
    let dp = linalg::log_det(&plus).ok_or(Error::LefschetzUndefined("even"))?;
    let dm = linalg::log_det(&minus).ok_or(Error::LefschetzUndefined("odd"))?;
    let rc = linalg::inverse_condition(&plus).min(linalg::inverse_condition(&minus));
    if rc < 1e-14 {
        let which = if linalg::inverse_condition(&plus) < 1e-14 { "even" } else { "odd" };
        return Err(Error::LefschetzUndefined(which));
    }
    let warning = (rc < 1e-8).then(|| {
        format!("induced map is ill-conditioned (condition number {:.3e})", 1.0 / rc)
    });
    Ok(Lefschetz {
        value: dp / dm,
        inverse_condition: rc,
        warning,
    })
}
