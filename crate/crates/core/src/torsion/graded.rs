//! Elements of graded lines relative to fixed reference volumes.
//!
//! An element `(s, n)` stands for `s · ω` where `ω` is the reference volume
//! of a line sitting in degree `n`. Every sign used by the torsion
//! computations is produced here:
//!
//! * swapping factors `ξ ⊗ η -> η ⊗ ξ` costs `(-1)^{nm}`;
//! * the dual of `s · ω` is `s^{-1} · ω^*`, sitting in degree `-n`;
//! * pairing duals `λ ⊗ μ` with `ξ ⊗ η` gives `λ(ξ) μ(η) (-1)^{nm}`;
//! * evaluation `ξ ⊗ λ -> λ(ξ)` carries no sign.

use crate::error::{Error, Result};
use crate::scalar::PolarScalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradedLineElement {
    pub scalar: PolarScalar,
    pub degree: i64,
}

impl GradedLineElement {
    pub fn new(scalar: PolarScalar, degree: i64) -> Self {
        GradedLineElement { scalar, degree }
    }

    /// `s` times the reference volume of `Λ^top W` for `dim W = dim`.
    pub fn volume(scalar: PolarScalar, dim: usize) -> Self {
        Self::new(scalar, dim as i64)
    }

    pub fn unit(degree: i64) -> Self {
        Self::new(PolarScalar::ONE, degree)
    }

    pub fn tensor(self, other: Self) -> Self {
        Self::new(self.scalar * other.scalar, self.degree + other.degree)
    }

    /// Image under the commutativity isomorphism `ψ : L ⊗ M -> M ⊗ L`,
    /// returned as the scalar relative to `ω_M ⊗ ω_L`.
    pub fn swap(first: Self, second: Self) -> Self {
        let sign = commutativity_sign(first.degree, second.degree);
        Self::new(sign * first.scalar * second.scalar, first.degree + second.degree)
    }

    /// The dual element in `L^†`, so that evaluation on `self` gives 1.
    pub fn dual(self) -> Self {
        Self::new(self.scalar.inv(), -self.degree)
    }

    /// The pairing `c : L^† ⊗ M^† -> (L ⊗ M)^†`.
    pub fn pair_duals(lambda: Self, mu: Self) -> Self {
        let sign = commutativity_sign(lambda.degree, mu.degree);
        Self::new(sign * lambda.scalar * mu.scalar, lambda.degree + mu.degree)
    }

    /// Evaluation `ε : L ⊗ L^† -> C`.
    pub fn evaluate(xi: Self, lambda: Self) -> Result<PolarScalar> {
        if xi.degree != -lambda.degree {
            return Err(Error::invalid(format!(
                "cannot evaluate a degree {} functional on a degree {} element",
                lambda.degree, xi.degree
            )));
        }
        Ok(xi.scalar * lambda.scalar)
    }

    /// The scalar `s` with `self = s · other` inside one line.
    pub fn ratio(self, other: Self) -> Result<PolarScalar> {
        if self.degree != other.degree {
            return Err(Error::Numerical(format!(
                "graded degrees disagree: {} versus {}",
                self.degree, other.degree
            )));
        }
        Ok(self.scalar / other.scalar)
    }
}

/// `(-1)^{nm}`.
pub fn commutativity_sign(n: i64, m: i64) -> PolarScalar {
    PolarScalar::sign((n * m).rem_euclid(2) == 1)
}

/// The sign `(-1)^{dim V · dim Z}` attached to `0 -> V -> W -> Z -> 0`.
pub fn ses_sign(dim_v: usize, dim_z: usize) -> PolarScalar {
    PolarScalar::sign((dim_v * dim_z) % 2 == 1)
}

/// Dimensions of the six kernel complements of a six-term sequence, named
/// after the spaces on which they live.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComplementDims {
    pub t1_plus: usize,
    pub t1_minus: usize,
    pub t2_plus: usize,
    pub t2_minus: usize,
    pub t_plus: usize,
    pub t_minus: usize,
}

/// The torsion sign exponent
/// `μ = ε(t2+)(ε(t1-) + ε(t1+)) + ε(t1-)(ε(t+) + ε(t-)) + ε(t-)(ε(t2+) + ε(t2-)) + ε(t+)`.
pub fn torsion_sign_exponent(e: ComplementDims) -> usize {
    e.t2_plus * (e.t1_minus + e.t1_plus)
        + e.t1_minus * (e.t_plus + e.t_minus)
        + e.t_minus * (e.t2_plus + e.t2_minus)
        + e.t_plus
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn el(re: f64, deg: i64) -> GradedLineElement {
        GradedLineElement::new(PolarScalar::from_complex(Complex64::new(re, 0.0)).unwrap(), deg)
    }

    #[test]
    fn swap_sign_depends_on_both_degrees() {
        let odd = GradedLineElement::swap(el(2.0, 1), el(3.0, 3));
        assert!(odd.scalar.relative_distance(PolarScalar::from_complex(Complex64::new(-6.0, 0.0)).unwrap()) < 1e-14);
        let even = GradedLineElement::swap(el(2.0, 2), el(3.0, 3));
        assert!(even.scalar.relative_distance(PolarScalar::from_complex(Complex64::new(6.0, 0.0)).unwrap()) < 1e-14);
    }

    #[test]
    fn dual_evaluates_to_one() {
        let x = el(5.0, 3);
        let v = GradedLineElement::evaluate(x, x.dual()).unwrap();
        assert!(v.relative_distance(PolarScalar::ONE) < 1e-14);
        assert!(GradedLineElement::evaluate(x, x).is_err());
    }

    #[test]
    fn pairing_undoes_tensor_up_to_sign() {
        let (a, b) = (el(2.0, 1), el(7.0, 1));
        let paired = GradedLineElement::pair_duals(a.dual(), b.dual());
        let v = GradedLineElement::evaluate(a.tensor(b), paired).unwrap();
        assert!(v.relative_distance(-PolarScalar::ONE) < 1e-14);
    }

    #[test]
    fn lemma_sign_exponent_vanishes_without_middle_term() {
        // f^± isomorphisms and V = 0: only t1± are nonzero.
        let e = ComplementDims {
            t1_plus: 3,
            t1_minus: 2,
            ..Default::default()
        };
        assert_eq!(torsion_sign_exponent(e), 0);
    }
}
