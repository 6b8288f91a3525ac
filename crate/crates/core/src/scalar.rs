//! Nonzero complex scalars stored as log-magnitude plus phase.
//!
//! Torsion values are products and quotients of many determinants, so they
//! are accumulated here instead of in rectangular form to avoid overflow.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarScalar {
    ln_abs: f64,
    arg: f64,
}

fn wrap_phase(arg: f64) -> f64 {
    let mut a = arg % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

impl PolarScalar {
    pub const ONE: PolarScalar = PolarScalar { ln_abs: 0.0, arg: 0.0 };

    pub fn from_parts(ln_abs: f64, arg: f64) -> Self {
        PolarScalar {
            ln_abs,
            arg: wrap_phase(arg),
        }
    }

    /// Returns `None` for zero or non-finite input.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        let r = z.norm();
        if r == 0.0 || !r.is_finite() {
            return None;
        }
        Some(PolarScalar {
            ln_abs: r.ln(),
            arg: z.arg(),
        })
    }

    /// `(-1)^odd` as a scalar.
    pub fn sign(odd: bool) -> Self {
        if odd {
            PolarScalar { ln_abs: 0.0, arg: PI }
        } else {
            Self::ONE
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.ln_abs.exp(), self.arg)
    }

    pub fn magnitude(self) -> f64 {
        self.ln_abs.exp()
    }

    pub fn ln_magnitude(self) -> f64 {
        self.ln_abs
    }

    /// Phase in `(-pi, pi]`.
    pub fn phase(self) -> f64 {
        self.arg
    }

    pub fn inv(self) -> Self {
        PolarScalar::from_parts(-self.ln_abs, -self.arg)
    }

    pub fn powi(self, k: i64) -> Self {
        PolarScalar::from_parts(self.ln_abs * k as f64, self.arg * k as f64)
    }

    /// `|self / other - 1|`, the relative distance used throughout the tests.
    pub fn relative_distance(self, other: PolarScalar) -> f64 {
        ((self / other).to_complex() - Complex64::new(1.0, 0.0)).norm()
    }
}

impl Mul for PolarScalar {
    type Output = PolarScalar;
    fn mul(self, rhs: PolarScalar) -> PolarScalar {
        PolarScalar::from_parts(self.ln_abs + rhs.ln_abs, self.arg + rhs.arg)
    }
}

impl Div for PolarScalar {
    type Output = PolarScalar;
    fn div(self, rhs: PolarScalar) -> PolarScalar {
        PolarScalar::from_parts(self.ln_abs - rhs.ln_abs, self.arg - rhs.arg)
    }
}

impl Neg for PolarScalar {
    type Output = PolarScalar;
    fn neg(self) -> PolarScalar {
        PolarScalar::from_parts(self.ln_abs, self.arg + PI)
    }
}

impl fmt::Display for PolarScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_complex();
        write!(
            f,
            "{:.12} {:+.12}i (|z| = {:.6e}, arg = {:.6})",
            z.re,
            z.im,
            self.magnitude(),
            self.arg
        )
    }
}

/// Relative distance `|a - b| / max(|b|, tiny)` between rectangular values.
pub fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}
