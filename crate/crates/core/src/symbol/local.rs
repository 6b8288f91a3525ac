//! The tame symbol `c_λ(h; f, g)` on a plane curve `Z(h)` as a limit of
//! zero-weighted products under the perturbation `(h, f - w, g)`:
//!
//! ```text
//! q(w) = (f(λ) - w)^{m_λ(h, g)} / Π_ν g(ν)^{m_ν(h, f - w)},
//! ```
//!
//! the product running over the zeros `ν` of `(h, f - w)` in the polydisc
//! `D_{ε/2}(λ)`. Along `w_k = w_0 ρ^k e^{iθ}` the values are computed until
//! three consecutive ones agree.
//!
//! The starting size is clamped below half of
//! `δ_0 = inf { |f(z)| : z ∈ Z(h) ∩ ∂D_{ε/2}(λ) }`, estimated on sampled
//! boundary points, so no zero of `f - w` crosses the boundary, and below
//! half of `δ_1 = |f(λ)|` when that is nonzero and `g(λ) = 0`, so the triple
//! zero set `Z(h, f - w, g)` stays empty. A step that still meets the
//! boundary or a zero of `g` rotates `θ` by the golden angle and restarts.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ZERO;
use crate::poly::univariate::roots;
use crate::poly::{multiplicity, solve_all, solve_system_with, MultiPolynomial, Polydisc, SolveOptions};
use crate::scalar::PolarScalar;

/// `2π (1 - 1/φ)`.
pub const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Direction rotations tried after a collision.
pub const MAX_ROTATIONS: usize = 8;

/// Largest radius handed out by [`SymbolProblem::with_admissible_radius`].
pub const MAX_ADMISSIBLE_RADIUS: f64 = 1.0;

const BOUNDARY_SAMPLES: usize = 256;

/// A plane-curve local model `(h; f, g)` at `λ ∈ Z(h)` with radius `ε`.
#[derive(Clone, Debug)]
pub struct SymbolProblem {
    h: MultiPolynomial,
    f: MultiPolynomial,
    g: MultiPolynomial,
    point: Vec<Complex64>,
    radius: f64,
}

fn check_plane(name: &str, p: &MultiPolynomial) -> Result<()> {
    if p.nvars() != 2 {
        return Err(Error::shape(format!("polynomial {name}"), 2, p.nvars()));
    }
    Ok(())
}

fn vanishes_at(p: &MultiPolynomial, z: &[Complex64]) -> Result<bool> {
    Ok(p.eval(z)?.norm() <= 1e-10 * p.eval_scale(z).max(1.0))
}

fn same_point(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

impl SymbolProblem {
    /// Checks that `λ ∈ Z(h)` and that `λ` is the only point of
    /// `Z(h, f) ∪ Z(h, g)` in `D_ε(λ)`.
    pub fn new(
        h: MultiPolynomial,
        f: MultiPolynomial,
        g: MultiPolynomial,
        point: Vec<Complex64>,
        radius: f64,
    ) -> Result<Self> {
        for (name, p) in [("h", &h), ("f", &f), ("g", &g)] {
            check_plane(name, p)?;
        }
        if point.len() != 2 {
            return Err(Error::shape("base point", 2, point.len()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("radius must be positive and finite"));
        }
        if !vanishes_at(&h, &point)? {
            return Err(Error::Precondition("the base point is not on the curve Z(h)".into()));
        }
        let region = Polydisc::new(point.clone(), radius);
        let tol = 1e-6 * (1.0 + radius);
        for (name, p) in [("f", &f), ("g", &g)] {
            let zeros = match solve_system_with(&[h.clone(), p.clone()], &region, &SolveOptions::default()) {
                Err(Error::BoundaryZero(z)) => {
                    return Err(Error::Precondition(format!(
                        "a zero of (h, {name}) lies on the boundary of the radius-{radius} polydisc near {z:?}; shrink the radius"
                    )))
                }
                other => other?,
            };
            if let Some(z) = zeros.points.iter().find(|z| !same_point(&z.point, &point, tol)) {
                return Err(Error::Precondition(format!(
                    "(h, {name}) has another zero {:?} within radius {radius}; shrink the radius",
                    z.point
                )));
            }
        }
        Ok(SymbolProblem { h, f, g, point, radius })
    }

    /// Uses half the distance from `λ` to the nearest other zero of
    /// `(h, f)` or `(h, g)`, capped at [`MAX_ADMISSIBLE_RADIUS`].
    pub fn with_admissible_radius(
        h: MultiPolynomial,
        f: MultiPolynomial,
        g: MultiPolynomial,
        point: Vec<Complex64>,
    ) -> Result<Self> {
        let radius = admissible_radius(&h, &f, &g, &point)?;
        Self::new(h, f, g, point, radius)
    }

    pub fn h(&self) -> &MultiPolynomial {
        &self.h
    }

    pub fn f(&self) -> &MultiPolynomial {
        &self.f
    }

    pub fn g(&self) -> &MultiPolynomial {
        &self.g
    }

    pub fn point(&self) -> &[Complex64] {
        &self.point
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Half the polydisc distance from `point` to the nearest other zero of
/// `(h, f)` or `(h, g)`, capped at [`MAX_ADMISSIBLE_RADIUS`].
pub fn admissible_radius(
    h: &MultiPolynomial,
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    point: &[Complex64],
) -> Result<f64> {
    for (name, p) in [("h", h), ("f", f), ("g", g)] {
        check_plane(name, p)?;
    }
    if point.len() != 2 {
        return Err(Error::shape("base point", 2, point.len()));
    }
    let disc = Polydisc::new(point.to_vec(), 1.0);
    let mut nearest = 2.0 * MAX_ADMISSIBLE_RADIUS;
    for p in [f, g] {
        for z in solve_all(&[h.clone(), p.clone()], &SolveOptions::default())?.points {
            let d = disc.distance(&z.point);
            if d > 1e-6 {
                nearest = nearest.min(d);
            }
        }
    }
    Ok((nearest / 2.0).min(MAX_ADMISSIBLE_RADIUS))
}

/// Parameters of the sequence `w_k = w_0 ρ^k e^{iθ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitSchedule {
    pub w0: f64,
    pub ratio: f64,
    /// Direction; drawn from `seed` when absent.
    pub theta: Option<f64>,
    pub max_steps: usize,
    pub stabilization_tol: f64,
    pub seed: u64,
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule {
            w0: 1e-2,
            ratio: 0.5,
            theta: None,
            max_steps: 40,
            stabilization_tol: 1e-7,
            seed: 42,
        }
    }
}

impl LimitSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.w0 > 0.0 && self.w0.is_finite()) {
            return Err(Error::invalid("schedule w0 must be positive"));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::invalid("schedule ratio must lie in (0, 1)"));
        }
        if self.max_steps < 3 {
            return Err(Error::invalid("schedule needs at least 3 steps"));
        }
        if !(self.stabilization_tol > 0.0) {
            return Err(Error::invalid("stabilization tolerance must be positive"));
        }
        Ok(())
    }

    /// The configured direction, or a seeded draw from `[0, 2π)`.
    pub fn direction(&self) -> f64 {
        self.theta
            .unwrap_or_else(|| ChaCha8Rng::seed_from_u64(self.seed).gen_range(0.0..2.0 * PI))
    }
}

/// One evaluation `q(w_k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub w: Complex64,
    pub q: Complex64,
}

#[derive(Clone, Debug)]
pub struct LocalSymbol {
    pub value: PolarScalar,
    /// `m_λ(h, g)`.
    pub multiplicity_hg: usize,
    /// Direction actually used.
    pub theta: f64,
    /// Starting size after clamping.
    pub w0: f64,
    /// Directions abandoned after a collision.
    pub rotations: usize,
    pub trace: Vec<TracePoint>,
}

/// `inf |f|` over sampled points of `Z(h) ∩ ∂D_r(λ)`.
fn boundary_infimum(h: &MultiPolynomial, f: &MultiPolynomial, point: &[Complex64], r: f64) -> Result<f64> {
    let mut inf = f64::INFINITY;
    for var in 0..2 {
        let other = 1 - var;
        for s in 0..BOUNDARY_SAMPLES {
            let on_circle = point[var] + Complex64::from_polar(r, 2.0 * PI * s as f64 / BOUNDARY_SAMPLES as f64);
            let coeffs = h.restrict(var, on_circle).univariate_coefficients(other)?;
            let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
            if max == 0.0 {
                // The whole line lies in Z(h).
                inf = inf.min(
                    (0..BOUNDARY_SAMPLES)
                        .map(|t| {
                            let mut z = point.to_vec();
                            z[var] = on_circle;
                            z[other] += Complex64::from_polar(r * t as f64 / BOUNDARY_SAMPLES as f64, 0.0);
                            f.eval(&z).map(|v| v.norm()).unwrap_or(f64::INFINITY)
                        })
                        .fold(f64::INFINITY, f64::min),
                );
                continue;
            }
            if coeffs.iter().skip(1).all(|c| c.norm() <= 1e-14 * max) {
                continue;
            }
            for root in roots(&coeffs)? {
                if (root - point[other]).norm() <= r {
                    let mut z = vec![ZERO; 2];
                    z[var] = on_circle;
                    z[other] = root;
                    inf = inf.min(f.eval(&z)?.norm());
                }
            }
        }
    }
    Ok(inf)
}

enum Run {
    Done(LocalSymbol),
    Collision,
}

fn q_value(
    problem: &SymbolProblem,
    f_at: Complex64,
    m_hg: usize,
    w: Complex64,
) -> Result<Option<PolarScalar>> {
    let shifted = &problem.f - &MultiPolynomial::constant(2, w);
    let region = Polydisc::new(problem.point.clone(), problem.radius / 2.0);
    let zeros = match solve_system_with(&[problem.h.clone(), shifted], &region, &SolveOptions::default()) {
        Err(Error::BoundaryZero(_)) => return Ok(None),
        other => other?,
    };
    let mut q = if m_hg == 0 {
        PolarScalar::ONE
    } else {
        match PolarScalar::from_complex(f_at - w) {
            Some(v) => v.powi(m_hg as i64),
            None => return Ok(None),
        }
    };
    for z in zeros.points {
        let gv = problem.g.eval(&z.point)?;
        if gv.norm() <= 1e-12 * problem.g.eval_scale(&z.point) {
            return Ok(None);
        }
        q = q / PolarScalar::from_complex(gv).expect("nonzero").powi(z.multiplicity as i64);
    }
    Ok(Some(q))
}

fn run(problem: &SymbolProblem, schedule: &LimitSchedule, theta: f64, w0: f64, f_at: Complex64, m_hg: usize) -> Result<Run> {
    let mut trace: Vec<TracePoint> = Vec::new();
    let mut values: Vec<PolarScalar> = Vec::new();
    for k in 0..schedule.max_steps {
        let w = Complex64::from_polar(w0 * schedule.ratio.powi(k as i32), theta);
        let Some(q) = q_value(problem, f_at, m_hg, w)? else {
            return Ok(Run::Collision);
        };
        trace.push(TracePoint { w, q: q.to_complex() });
        values.push(q);
        if let [.., a, b, c] = values.as_slice() {
            let tol = schedule.stabilization_tol;
            if b.relative_distance(*a) <= tol && c.relative_distance(*b) <= tol {
                return Ok(Run::Done(LocalSymbol {
                    value: *c,
                    multiplicity_hg: m_hg,
                    theta,
                    w0,
                    rotations: 0,
                    trace,
                }));
            }
        }
    }
    let tail = trace.iter().rev().take(5).rev().map(|t| t.q).collect();
    Err(Error::NonStabilization {
        steps: schedule.max_steps,
        tail,
    })
}

/// `c_λ(h; f, g)` by the perturbation limit.
pub fn tame_symbol_local(problem: &SymbolProblem, schedule: &LimitSchedule) -> Result<LocalSymbol> {
    schedule.validate()?;
    let lambda = &problem.point;
    let m_hg = if vanishes_at(&problem.g, lambda)? {
        multiplicity(&[problem.h.clone(), problem.g.clone()], lambda)?
    } else {
        0
    };
    let f_at = problem.f.eval(lambda)?;
    let delta0 = boundary_infimum(&problem.h, &problem.f, lambda, problem.radius / 2.0)?;
    let delta1 = if f_at.norm() > 0.0 && m_hg > 0 { f_at.norm() } else { f64::INFINITY };
    let w0 = schedule.w0.min(delta0.min(delta1) / 2.0);
    if !(w0 > 0.0) {
        return Err(Error::Precondition(
            "f vanishes on Z(h) at the boundary of the half-radius polydisc; shrink the radius".into(),
        ));
    }
    let mut theta = schedule.direction();
    for rotation in 0..=MAX_ROTATIONS {
        if let Run::Done(mut s) = run(problem, schedule, theta, w0, f_at, m_hg)? {
            s.rotations = rotation;
            return Ok(s);
        }
        theta = (theta + GOLDEN_ANGLE) % (2.0 * PI);
    }
    Err(Error::Precondition(format!(
        "every perturbation direction met the boundary or a zero of g after {MAX_ROTATIONS} rotations; shrink the radius"
    )))
}

/// `c_{x0}(f, g)` on the line `y = 0` through the limit procedure, for
/// univariate `f, g` lifted to the plane model `h = y`.
pub fn tame_symbol_on_line(
    f: &MultiPolynomial,
    g: &MultiPolynomial,
    x0: Complex64,
    schedule: &LimitSchedule,
) -> Result<LocalSymbol> {
    for (name, p) in [("f", f), ("g", g)] {
        if p.nvars() != 1 {
            return Err(Error::shape(format!("univariate polynomial {name}"), 1, p.nvars()));
        }
    }
    let lift = |p: &MultiPolynomial| p.remap(2, &[0]);
    let h = MultiPolynomial::variable(2, 1);
    let problem = SymbolProblem::with_admissible_radius(h, lift(f), lift(g), vec![x0, ZERO])?;
    tame_symbol_local(&problem, schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::poly::plane::{constant, from_real_terms, x, y};

    fn local(h: MultiPolynomial, f: MultiPolynomial, g: MultiPolynomial) -> LocalSymbol {
        let p = SymbolProblem::with_admissible_radius(h, f, g, vec![ZERO; 2]).unwrap();
        tame_symbol_local(&p, &LimitSchedule::default()).unwrap()
    }

    #[test]
    fn line_golden_values() {
        assert!((local(y(), x(), x()).value.to_complex() - c64(-1.0, 0.0)).norm() < 1e-6);
        assert!((local(y(), &constant(1.0) + &x(), x()).value.to_complex() - c64(1.0, 0.0)).norm() < 1e-6);
        assert!((local(y(), constant(2.0), constant(3.0)).value.to_complex() - c64(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn cusp_symbol_is_one() {
        let s = local(from_real_terms(&[(0, 2, 1.0), (3, 0, -1.0)]), x(), y());
        assert_eq!(s.multiplicity_hg, 3);
        assert!((s.value.to_complex() - c64(1.0, 0.0)).norm() < 1e-6);
        assert!(s.trace.len() <= 40);
    }

    #[test]
    fn unit_against_uniformizer() {
        // c_0(φ, z) = φ(0) with φ = 3 + z + z^2.
        let phi = from_real_terms(&[(0, 0, 3.0), (1, 0, 1.0), (2, 0, 1.0)]);
        let v = local(y(), phi, x()).value.to_complex();
        assert!((v - c64(3.0, 0.0)).norm() < 1e-6 * 3.0, "{v}");
    }

    #[test]
    fn other_zero_inside_radius_is_rejected() {
        let f = &x() * &(&x() - &constant(0.1));
        let r = SymbolProblem::new(y(), f, x(), vec![ZERO; 2], 0.5);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn base_point_off_curve_is_rejected() {
        let r = SymbolProblem::new(&y() - &constant(1.0), x(), x(), vec![ZERO; 2], 0.5);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn schedule_direction_is_seeded() {
        let s = LimitSchedule::default();
        assert_eq!(s.direction(), s.direction());
        let fixed = LimitSchedule { theta: Some(1.0), ..s };
        assert_eq!(fixed.direction(), 1.0);
    }
}
