//! Zeros of square polynomial systems in one or two variables.
//!
//! Two-variable systems are handled by elimination: the roots of
//! `Res_y(p, q)` are the `x`-coordinates of common zeros, each counted with
//! its intersection multiplicity as long as no two zeros share an
//! `x`-coordinate and no zero escapes to infinity. When either condition
//! fails the system is sheared, `x = u + s y` for a seeded random `s`, and
//! solved again. Systems in which one polynomial involves a single variable
//! are solved directly, with multiplicity `a · b` for a root of order `a`
//! of that polynomial over which the other vanishes to order `b`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::univariate::{clustered_roots, eval_scale, ClusterOptions};
use super::{resultant, MultiPolynomial};
use crate::error::{Error, Result};
use crate::linalg::{c64, ONE, ZERO};

/// The polydisc `{ z : max_j |z_j - center_j| < radius }`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polydisc {
    pub center: Vec<Complex64>,
    pub radius: f64,
}

impl Polydisc {
    pub fn new(center: Vec<Complex64>, radius: f64) -> Self {
        Polydisc { center, radius }
    }

    /// Polydisc distance from the center.
    pub fn distance(&self, z: &[Complex64]) -> f64 {
        z.iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Merge radius for root clusters; defaults to `1e-6 (1 + radius)`.
    pub cluster_tol: Option<f64>,
    /// Zeros closer than `boundary_tol (1 + radius)` to the boundary are
    /// reported as boundary collisions.
    pub boundary_tol: f64,
    /// Seed for the random shears.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cluster_tol: None,
            boundary_tol: 1e-7,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Zero {
    pub point: Vec<Complex64>,
    pub multiplicity: usize,
    /// `max_i |g_i(point)|`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ZeroSet {
    pub points: Vec<Zero>,
}

impl ZeroSet {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|z| z.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn residual(g: &[MultiPolynomial], z: &[Complex64]) -> f64 {
    g.iter()
        .map(|p| p.eval(z).map(|v| v.norm()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Relative size below which restricted coefficients are treated as
/// rounding noise.
const CLEAN_TOL: f64 = 1e-14;

/// Coefficients in the free variable of `p` with `z_var = value`. Each
/// coefficient is zeroed when it is below `CLEAN_TOL` times the sum of the
/// magnitudes that produced it, so only cancellation noise is removed and
/// tiny exact coefficients such as `w³` in `y² - w³` survive.
fn restricted(p: &MultiPolynomial, var: usize, value: Complex64) -> Result<Vec<Complex64>> {
    let free = 1 - var;
    let coeffs = p.restrict(var, value).univariate_coefficients(free)?;
    let mut scale = vec![0.0f64; coeffs.len()];
    for (e, c) in p.terms() {
        if let Some(s) = scale.get_mut(e[free] as usize) {
            *s += c.norm() * value.norm().powi(e[var] as i32);
        }
    }
    Ok(coeffs
        .into_iter()
        .zip(scale)
        .map(|(c, s)| if c.norm() <= CLEAN_TOL * s { ZERO } else { c })
        .collect())
}

fn is_negligible(coeffs: &[Complex64], scale: f64) -> bool {
    coeffs.iter().all(|c| c.norm() <= 1e-10 * scale)
}

fn newton2(g: &[MultiPolynomial], mut z: Vec<Complex64>) -> Vec<Complex64> {
    let jac = [
        [g[0].differentiate(0), g[0].differentiate(1)],
        [g[1].differentiate(0), g[1].differentiate(1)],
    ];
    let mut res = residual(g, &z);
    for _ in 0..30 {
        let f0 = g[0].eval(&z).unwrap();
        let f1 = g[1].eval(&z).unwrap();
        let a = jac[0][0].eval(&z).unwrap();
        let b = jac[0][1].eval(&z).unwrap();
        let c = jac[1][0].eval(&z).unwrap();
        let d = jac[1][1].eval(&z).unwrap();
        let det = a * d - b * c;
        if det.norm() <= 1e-14 * (a.norm() * d.norm() + b.norm() * c.norm()) || det == ZERO {
            break;
        }
        let dx = (d * f0 - b * f1) / det;
        let dy = (a * f1 - c * f0) / det;
        let next = vec![z[0] - dx, z[1] - dy];
        let next_res = residual(g, &next);
        if next_res < res || (next_res == res && next_res == 0.0) {
            let small = dx.norm() + dy.norm() <= 1e-16 * (1.0 + z[0].norm() + z[1].norm());
            z = next;
            res = next_res;
            if small || res == 0.0 {
                break;
            }
        } else {
            break;
        }
    }
    z
}

enum Attempt {
    Done(Vec<(Vec<Complex64>, usize)>),
    NeedsShear,
}

/// Roots of `u` (depending only on `var`) paired with roots of `other`
/// restricted to each of them.
fn solve_with_univariate(
    u: &MultiPolynomial,
    var: usize,
    other: &MultiPolynomial,
    copts: &ClusterOptions,
) -> Result<Vec<(Vec<Complex64>, usize)>> {
    let roots = clustered_roots(&u.univariate_coefficients(var)?, copts)?;
    let free = 1 - var;
    let mut out = Vec::new();
    for r in roots {
        let w = restricted(other, var, r.center)?;
        let mut probe = vec![ONE; 2];
        probe[var] = c64(1.0 + r.center.norm(), 0.0);
        if is_negligible(&w, other.eval_scale(&probe).max(f64::MIN_POSITIVE)) {
            return Err(Error::NotZeroDimensional(format!(
                "the line z{} = {:.6} lies in the zero set",
                var + 1,
                r.center
            )));
        }
        if w.iter().skip(1).all(|c| *c == ZERO) {
            continue;
        }
        for s in clustered_roots(&w, copts)? {
            let mut point = vec![ZERO; 2];
            point[var] = r.center;
            point[free] = s.center;
            out.push((point, r.multiplicity * s.multiplicity));
        }
    }
    Ok(out)
}

fn eliminate(p: &MultiPolynomial, q: &MultiPolynomial, copts: &ClusterOptions) -> Result<Attempt> {
    let res = resultant(p, q, 1)?;
    if res.is_zero() {
        return Err(Error::NotZeroDimensional(
            "the polynomials share a common factor".into(),
        ));
    }
    let r = res.univariate_coefficients(0)?;
    if r.len() <= 1 {
        return Ok(Attempt::Done(Vec::new()));
    }
    let lead = |f: &MultiPolynomial| -> Result<Vec<Complex64>> {
        f.coefficients_in(1)
            .last()
            .expect("positive degree in y")
            .univariate_coefficients(0)
    };
    let (lp, lq) = (lead(p)?, lead(q)?);
    let mut out = Vec::new();
    for cl in clustered_roots(&r, copts)? {
        let u0 = cl.center;
        let small = |c: &[Complex64]| {
            super::univariate::eval(c, u0).norm() <= 1e-8 * eval_scale(c, u0).max(f64::MIN_POSITIVE)
        };
        if small(&lp) && small(&lq) {
            return Ok(Attempt::NeedsShear);
        }
        let py = restricted(p, 0, u0)?;
        let qy = restricted(q, 0, u0)?;
        let (a, b) = if small(&lp) { (qy, py) } else { (py, qy) };
        let candidates = clustered_roots(&a, copts)?;
        let common: Vec<Complex64> = candidates
            .iter()
            .map(|c| c.center)
            .filter(|&y| super::univariate::eval(&b, y).norm() <= 1e-6 * eval_scale(&b, y).max(f64::MIN_POSITIVE))
            .collect();
        if common.len() != 1 {
            return Ok(Attempt::NeedsShear);
        }
        out.push((vec![u0, common[0]], cl.multiplicity));
    }
    Ok(Attempt::Done(out))
}

fn shear(p: &MultiPolynomial, s: Complex64) -> Result<MultiPolynomial> {
    if s == ZERO {
        return Ok(p.clone());
    }
    let moved = &MultiPolynomial::variable(2, 0) + &MultiPolynomial::variable(2, 1).scale(s);
    p.substitute(0, &moved)
}

fn solve_plane(p: &MultiPolynomial, q: &MultiPolynomial, copts: &ClusterOptions, seed: u64) -> Result<Vec<(Vec<Complex64>, usize)>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::NotZeroDimensional("a polynomial is identically zero".into()));
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Vec::new());
    }
    for (u, other) in [(p, q), (q, p)] {
        for var in 0..2 {
            if !u.depends_on(1 - var) {
                return solve_with_univariate(u, var, other, copts);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..6 {
        let s = if attempt == 0 {
            ZERO
        } else {
            c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        };
        let (ps, qs) = (shear(p, s)?.normalized(), shear(q, s)?.normalized());
        if !ps.depends_on(1) || !qs.depends_on(1) {
            continue;
        }
        if let Attempt::Done(points) = eliminate(&ps, &qs, copts)? {
            return Ok(points
                .into_iter()
                .map(|(z, m)| (vec![z[0] + s * z[1], z[1]], m))
                .collect());
        }
    }
    Err(Error::Numerical(
        "could not separate the zeros by a linear change of coordinates".into(),
    ))
}

fn finish(g: &[MultiPolynomial], raw: Vec<(Vec<Complex64>, usize)>) -> ZeroSet {
    let points = raw
        .into_iter()
        .map(|(z, m)| {
            let z = if g.len() == 2 && m == 1 { newton2(g, z) } else { z };
            Zero {
                residual: residual(g, &z),
                point: z,
                multiplicity: m,
            }
        })
        .collect();
    ZeroSet { points }
}

fn validate(g: &[MultiPolynomial]) -> Result<()> {
    let n = g.len();
    if n == 0 || n > 2 {
        return Err(Error::Unsupported(format!(
            "square systems in {n} variables (only 1 or 2 are supported)"
        )));
    }
    if let Some(p) = g.iter().find(|p| p.nvars() != n) {
        return Err(Error::shape("polynomial variable count", n, p.nvars()));
    }
    Ok(())
}

fn solve_raw(g: &[MultiPolynomial], cluster_tol: f64, seed: u64) -> Result<ZeroSet> {
    validate(g)?;
    let copts = ClusterOptions {
        cluster_tol,
        ..Default::default()
    };
    let raw = if g.len() == 1 {
        let p = g[0].normalized();
        if p.is_zero() {
            return Err(Error::NotZeroDimensional("the polynomial is identically zero".into()));
        }
        if p.is_constant() {
            Vec::new()
        } else {
            clustered_roots(&p.univariate_coefficients(0)?, &copts)?
                .into_iter()
                .map(|c| (vec![c.center], c.multiplicity))
                .collect()
        }
    } else {
        solve_plane(&g[0].normalized(), &g[1].normalized(), &copts, seed)?
    };
    Ok(finish(g, raw))
}

/// Every affine zero of the system.
pub fn solve_all(g: &[MultiPolynomial], opts: &SolveOptions) -> Result<ZeroSet> {
    solve_raw(g, opts.cluster_tol.unwrap_or(1e-6), opts.seed)
}

/// Zeros inside a polydisc, with default options.
pub fn solve_system(g: &[MultiPolynomial], region: &Polydisc) -> Result<ZeroSet> {
    solve_system_with(g, region, &SolveOptions::default())
}

/// Zeros inside a polydisc; a zero on the boundary is an error.
pub fn solve_system_with(g: &[MultiPolynomial], region: &Polydisc, opts: &SolveOptions) -> Result<ZeroSet> {
    validate(g)?;
    if region.center.len() != g.len() {
        return Err(Error::shape("region center", g.len(), region.center.len()));
    }
    if !(region.radius > 0.0) {
        return Err(Error::invalid("region radius must be positive"));
    }
    let cluster_tol = opts.cluster_tol.unwrap_or(1e-6 * (1.0 + region.radius));
    let all = solve_raw(g, cluster_tol, opts.seed)?;
    let band = opts.boundary_tol * (1.0 + region.radius);
    let mut points = Vec::new();
    for z in all.points {
        let d = region.distance(&z.point);
        if (d - region.radius).abs() <= band {
            return Err(Error::BoundaryZero(z.point));
        }
        if d < region.radius {
            points.push(z);
        }
    }
    Ok(ZeroSet { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::plane::{constant, from_real_terms, x, y};

    fn near(z: &Zero, p: [Complex64; 2]) -> bool {
        (z.point[0] - p[0]).norm() < 1e-9 && (z.point[1] - p[1]).norm() < 1e-9
    }

    #[test]
    fn coordinate_axes() {
        let zs = solve_system(&[x(), y()], &Polydisc::new(vec![ZERO; 2], 1.0)).unwrap();
        assert_eq!(zs.points.len(), 1);
        assert!(near(&zs.points[0], [ZERO, ZERO]));
        assert_eq!(zs.points[0].multiplicity, 1);
    }

    #[test]
    fn parabola_and_diagonal() {
        let g = [from_real_terms(&[(2, 0, 1.0), (0, 0, -1.0)]), &y() - &x()];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 2.0)).unwrap();
        assert_eq!(zs.points.len(), 2);
        assert!(zs.points.iter().any(|z| near(z, [c64(1.0, 0.0), c64(1.0, 0.0)])));
        assert!(zs.points.iter().any(|z| near(z, [c64(-1.0, 0.0), c64(-1.0, 0.0)])));
        assert!(zs.points.iter().all(|z| z.residual < 1e-9));
    }

    #[test]
    fn imaginary_roots() {
        let g = [from_real_terms(&[(2, 0, 1.0), (0, 0, 1.0)]), y()];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 2.0)).unwrap();
        assert_eq!(zs.points.len(), 2);
        assert!(zs.points.iter().any(|z| near(z, [c64(0.0, 1.0), ZERO])));
        assert!(zs.points.iter().any(|z| near(z, [c64(0.0, -1.0), ZERO])));
    }

    #[test]
    fn cusp_against_vertical_line() {
        let w = 1e-4;
        let g = [from_real_terms(&[(0, 2, 1.0), (3, 0, -1.0)]), &x() - &constant(w)];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 0.5)).unwrap();
        assert_eq!(zs.points.len(), 2);
        assert_eq!(zs.total_multiplicity(), 3 - 1);
    }

    #[test]
    fn tangency_counts_twice() {
        // y = x^2 against y = 0: one zero of multiplicity 2.
        let g = [&y() - &from_real_terms(&[(2, 0, 1.0)]), &y() + &from_real_terms(&[(1, 1, 1.0)])];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 0.5)).unwrap();
        assert_eq!(zs.points.len(), 1);
        assert_eq!(zs.points[0].multiplicity, 2);
    }

    #[test]
    fn boundary_collision() {
        let g = [&x() - &constant(1.0), y()];
        assert!(matches!(
            solve_system(&g, &Polydisc::new(vec![ZERO; 2], 1.0)),
            Err(Error::BoundaryZero(_))
        ));
    }

    #[test]
    fn common_factor_is_not_zero_dimensional() {
        let g = [&x() * &y(), &(&x() * &y()) + &(&x() * &x())];
        assert!(matches!(
            solve_system(&g, &Polydisc::new(vec![ZERO; 2], 1.0)),
            Err(Error::NotZeroDimensional(_))
        ));
    }

    #[test]
    fn shared_projection_triggers_shear() {
        // (x^2 - 1)(...) style: zeros (0, 1) and (0, -1) share x = 0.
        let g = [x(), from_real_terms(&[(0, 2, 1.0), (0, 0, -1.0), (1, 1, 1.0)])];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 2.0)).unwrap();
        assert_eq!(zs.points.len(), 2);
        let g = [
            from_real_terms(&[(1, 0, 1.0), (0, 2, 1.0), (0, 0, -1.0)]),
            from_real_terms(&[(1, 0, 2.0), (0, 2, 1.0), (0, 0, -1.0)]),
        ];
        let zs = solve_system(&g, &Polydisc::new(vec![ZERO; 2], 2.0)).unwrap();
        assert_eq!(zs.points.len(), 2);
        assert!(zs.points.iter().all(|z| z.point[0].norm() < 1e-9 && z.multiplicity == 1));
    }
}
