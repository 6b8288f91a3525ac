//! Antisymmetry, multiplicativity and the Steinberg relation for the tame
//! symbol, evaluated by the perturbation limit at one point of a curve.

use num_complex::Complex64;

use super::local::{tame_symbol_local, LimitSchedule, SymbolProblem};
use crate::error::Result;
use crate::poly::MultiPolynomial;
use crate::scalar::PolarScalar;

/// Inputs of one axiom battery on the curve `Z(h)` at `λ`.
#[derive(Clone, Debug)]
pub struct AxiomInputs {
    pub h: MultiPolynomial,
    pub f1: MultiPolynomial,
    pub f2: MultiPolynomial,
    pub f3: MultiPolynomial,
    pub t: MultiPolynomial,
    pub point: Vec<Complex64>,
}

/// Each ratio should equal one; `deviation` is its distance from one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomValue {
    pub value: Complex64,
    pub deviation: f64,
}

impl AxiomValue {
    fn new(v: PolarScalar) -> Self {
        AxiomValue {
            value: v.to_complex(),
            deviation: v.relative_distance(PolarScalar::ONE),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomReport {
    /// `c(f1, f2) c(f2, f1)`
    pub antisymmetry: AxiomValue,
    /// `c(f1, f2 f3) / (c(f1, f2) c(f1, f3))`
    pub multiplicativity: AxiomValue,
    /// `c(t, 1 - t)`
    pub steinberg: AxiomValue,
}

impl AxiomReport {
    pub fn max_deviation(&self) -> f64 {
        self.antisymmetry
            .deviation
            .max(self.multiplicativity.deviation)
            .max(self.steinberg.deviation)
    }
}

fn symbol(
    h: &MultiPolynomial,
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    point: &[Complex64],
    schedule: &LimitSchedule,
) -> Result<PolarScalar> {
    let p = SymbolProblem::with_admissible_radius(h.clone(), f.clone(), g.clone(), point.to_vec())?;
    Ok(tame_symbol_local(&p, schedule)?.value)
}

pub fn symbol_axioms_check(inputs: &AxiomInputs, schedule: &LimitSchedule) -> Result<AxiomReport> {
    let AxiomInputs { h, f1, f2, f3, t, point } = inputs;
    let c = |a: &MultiPolynomial, b: &MultiPolynomial| symbol(h, a, b, point, schedule);
    let c12 = c(f1, f2)?;
    let antisymmetry = AxiomValue::new(c12 * c(f2, f1)?);
    let multiplicativity = AxiomValue::new(c(f1, &(f2 * f3))? / (c12 * c(f1, f3)?));
    let one_minus_t = &MultiPolynomial::constant(t.nvars(), Complex64::new(1.0, 0.0)) - t;
    let steinberg = AxiomValue::new(c(t, &one_minus_t)?);
    Ok(AxiomReport {
        antisymmetry,
        multiplicativity,
        steinberg,
    })
}
