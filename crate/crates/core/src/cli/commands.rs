//! One function per subcommand, from a parsed problem file to an outcome.

use serde_json::{json, Value};

use crate::fredholm::cohomology;
use crate::koszul::build_koszul;
use crate::linalg::RankPolicy;
use crate::poly::MultiPolynomial;
use crate::symbol::{
    carey_pincus, disc_root_count, joint_torsion_global_disc, noether_index_with, symbol_axioms_check,
    tame_symbol_local, tame_symbol_on_line, tame_symbol_regular, AxiomInputs, AxiomValue, DiscModelProblem,
    LimitSchedule, LocalMethod, LocalSymbol, SymbolProblem, WINDING_NODES,
};
use crate::torsion::{
    explicit_nonsingular_product, joint_torsion_nonsingular, joint_torsion_with, koszul_joint_torsion,
    JointTorsionOptions, JointTorsionProblem,
};
use crate::verify::{run_suite, Suite};

use super::envelope::{complex, polar, scalar, Diagnostic, Failure, Outcome};
use super::problem::{
    self, payload, AxiomsPayload, DiscPayload, InputError, JointTorsionPayload, KoszulPayload, NoetherPayload,
    TameSymbolPayload,
};

/// Settings shared by the problem-file commands.
#[derive(Clone, Debug)]
pub struct Context {
    pub policy: RankPolicy,
    pub schedule: LimitSchedule,
    pub cross_check: bool,
    pub trace: bool,
}

type CommandResult = std::result::Result<Outcome, Failure>;

const AXIOM_TOL: f64 = 1e-6;

pub fn koszul(body: &Value, ctx: &Context) -> CommandResult {
    let p: KoszulPayload = payload(body)?;
    let mut a = problem::tuple("payload.matrices", &p.matrices, p.commute_tol)?;
    if let Some(pt) = &p.point {
        let lambda = problem::point("payload.point", pt)?;
        if lambda.len() != a.n() {
            return Err(InputError::new("payload.point", format!("point has {} coordinates, expected {}", lambda.len(), a.n())).into());
        }
        a = a.translate(&lambda)?;
    }
    let k = build_koszul(&a);
    let x = k.complex();
    let h = cohomology(x, &ctx.policy);
    let degrees: Vec<i32> = x.degrees().collect();
    let dims: Vec<usize> = degrees.iter().map(|&d| h.dim(d)).collect();
    let mut out = Outcome::new(
        json!({ "degrees": degrees, "dims": dims, "index": h.index() }),
        json!({
            "n": a.n(),
            "module_dim": a.dim(),
            "space_dims": x.dims(),
            "euler_characteristic": x.euler_characteristic(),
            "ambiguous": h.ambiguous,
        }),
    );
    if h.ambiguous {
        out.push(Diagnostic::warning("rank-policy", "a rank decision lies within a factor 10 of the threshold"));
    }
    Ok(out)
}

fn polys(path: &str, ps: &[problem::PolyData], nvars: usize) -> std::result::Result<Vec<MultiPolynomial>, InputError> {
    ps.iter()
        .enumerate()
        .map(|(i, p)| problem::polynomial(&format!("{path}[{i}]"), p, Some(nvars)))
        .collect()
}

pub fn joint_torsion(body: &Value, ctx: &Context) -> CommandResult {
    match payload::<JointTorsionPayload>(body)? {
        JointTorsionPayload::Complex(m) => {
            let (x, f, g) = m.build()?;
            let problem = JointTorsionProblem::new(x, f, g)?;
            let opts = JointTorsionOptions {
                policy: ctx.policy,
                ..Default::default()
            };
            let r = joint_torsion_with(&problem, &opts)?;
            let mut out = Outcome::new(
                scalar(r.value),
                json!({
                    "model": "complex",
                    "polar": polar(r.value),
                    "torsion_delta_g": scalar(r.torsion_delta_g),
                    "torsion_delta_f": scalar(r.torsion_delta_f),
                    "cone_swap": scalar(r.cone_swap),
                }),
            );
            if r.ambiguous {
                out.push(Diagnostic::warning("rank-policy", "a rank decision lies within a factor 10 of the threshold"));
            }
            if ctx.cross_check {
                out.push(Diagnostic::info(
                    "cross-check-skipped",
                    "the Lefschetz cross-check needs the koszul model",
                ));
            }
            Ok(out)
        }
        JointTorsionPayload::Koszul(m) => {
            let a = problem::tuple("payload.matrices", &m.matrices, m.commute_tol)?;
            let n = a.n();
            let h = polys("payload.h", &m.h, n)?;
            if h.len() + 1 != n {
                return Err(InputError::new(
                    "payload.h",
                    format!("{} cutting functions given, expected {}", h.len(), n - 1),
                )
                .into());
            }
            let f = problem::polynomial("payload.f", &m.f, Some(n))?;
            let g = problem::polynomial("payload.g", &m.g, Some(n))?;
            let value = koszul_joint_torsion(&a, &h, &f, &g, &ctx.policy)?;
            let mut details = json!({ "model": "koszul", "polar": polar(value) });
            let mut out = Outcome::new(scalar(value), Value::Null);
            if ctx.cross_check {
                match joint_torsion_nonsingular(&a, &h, &f, &g, &ctx.policy) {
                    Ok(lq) => {
                        let explicit = explicit_nonsingular_product(&a, &h, &f, &g, &ctx.policy)?;
                        details["cross_check"] = json!({
                            "lefschetz_quotient": scalar(lq),
                            "explicit_product": scalar(explicit),
                            "relative_gap": value.relative_distance(lq),
                            "explicit_relative_gap": value.relative_distance(explicit),
                        });
                    }
                    Err(e) => out.push(Diagnostic::warning("cross-check-skipped", e.to_string())),
                }
            }
            out.details = details;
            Ok(out)
        }
    }
}

fn symbol_details(s: &LocalSymbol, radius: Option<f64>, trace: bool) -> Value {
    let mut d = json!({
        "method": "limit",
        "polar": polar(s.value),
        "multiplicity_hg": s.multiplicity_hg,
        "theta": s.theta,
        "w0": s.w0,
        "rotations": s.rotations,
        "steps": s.trace.len(),
    });
    if let Some(r) = radius {
        d["radius"] = json!(r);
    }
    if trace {
        d["trace"] = s
            .trace
            .iter()
            .map(|t| json!({ "w": complex(t.w), "q": complex(t.q) }))
            .collect();
    }
    d
}

pub fn tame_symbol(body: &Value, ctx: &Context) -> CommandResult {
    let p: TameSymbolPayload = payload(body)?;
    match &p.h {
        None => {
            let f = problem::polynomial("payload.f", &p.f, Some(1))?;
            let g = problem::polynomial("payload.g", &p.g, Some(1))?;
            let pt = problem::point("payload.point", &p.point)?;
            if pt.len() != 1 {
                return Err(InputError::new("payload.point", "a curve point has one coordinate when h is absent").into());
            }
            let value = tame_symbol_regular(&f, &g, pt[0])?;
            let mut details = json!({ "method": "regular", "polar": polar(value) });
            if ctx.cross_check || ctx.trace {
                let limit = tame_symbol_on_line(&f, &g, pt[0], &ctx.schedule)?;
                let mut l = symbol_details(&limit, None, ctx.trace);
                l["value"] = scalar(limit.value);
                l["relative_gap"] = json!(value.relative_distance(limit.value));
                details["limit"] = l;
            }
            Ok(Outcome::new(scalar(value), details))
        }
        Some(hd) => {
            let h = problem::polynomial("payload.h", hd, Some(2))?;
            let f = problem::polynomial("payload.f", &p.f, Some(2))?;
            let g = problem::polynomial("payload.g", &p.g, Some(2))?;
            let pt = problem::point("payload.point", &p.point)?;
            if pt.len() != 2 {
                return Err(InputError::new("payload.point", "a plane point has two coordinates").into());
            }
            let sp = match p.radius {
                Some(r) => SymbolProblem::new(h, f, g, pt, r)?,
                None => SymbolProblem::with_admissible_radius(h, f, g, pt)?,
            };
            let s = tame_symbol_local(&sp, &ctx.schedule)?;
            let mut out = Outcome::new(scalar(s.value), symbol_details(&s, Some(sp.radius()), ctx.trace));
            if ctx.cross_check {
                let other = LimitSchedule {
                    theta: Some(s.theta + std::f64::consts::FRAC_PI_3),
                    ..ctx.schedule
                };
                let again = tame_symbol_local(&sp, &other)?;
                out.details["cross_check"] = json!({
                    "theta": other.theta,
                    "value": scalar(again.value),
                    "relative_gap": s.value.relative_distance(again.value),
                });
            }
            Ok(out)
        }
    }
}

pub fn carey_pincus_cmd(body: &Value, ctx: &Context) -> CommandResult {
    let p: DiscPayload = payload(body)?;
    let f = problem::polynomial("payload.f", &p.f, Some(1))?;
    let g = problem::polynomial("payload.g", &p.g, Some(1))?;
    let dp = DiscModelProblem::new(f, g)?;
    let value = carey_pincus(&dp)?;
    let zeros: Vec<Value> = dp.interior_zeros()?.into_iter().map(complex).collect();
    let mut details = json!({ "polar": polar(value), "interior_zeros": zeros });
    if ctx.cross_check {
        // The product formula carries the orientation of JT(T_g, T_f).
        let global = joint_torsion_global_disc(&dp.swapped(), LocalMethod::Regular)?;
        details["cross_check"] = json!({
            "global_symbol_product": scalar(global.value),
            "relative_gap": value.relative_distance(global.value),
        });
    }
    Ok(Outcome::new(scalar(value), details))
}

pub fn noether(body: &Value, ctx: &Context) -> CommandResult {
    let p: NoetherPayload = payload(body)?;
    let f = problem::polynomial("payload.f", &p.f, Some(1))?;
    let w = noether_index_with(&f, WINDING_NODES)?;
    let mut details = json!({ "winding_quadrature": w.quadrature, "nodes": WINDING_NODES });
    let mut out = Outcome::new(json!(w.index), Value::Null);
    if ctx.cross_check {
        let count = disc_root_count(&f)?;
        details["cross_check"] = json!({ "disc_root_count": count, "agrees": w.index == -(count as i64) });
        if w.index != -(count as i64) {
            out.push(Diagnostic::warning("cross-check", "winding number and disc root count disagree"));
        }
    }
    out.details = details;
    Ok(out)
}

fn axiom_value(v: AxiomValue) -> Value {
    json!({ "value": complex(v.value), "deviation": v.deviation })
}

pub fn axioms(body: &Value, ctx: &Context) -> CommandResult {
    let p: AxiomsPayload = payload(body)?;
    let poly = |name: &str, d: &problem::PolyData| problem::polynomial(&format!("payload.{name}"), d, Some(2));
    let point = problem::point("payload.point", &p.point)?;
    if point.len() != 2 {
        return Err(InputError::new("payload.point", "a plane point has two coordinates").into());
    }
    let inputs = AxiomInputs {
        h: poly("h", &p.h)?,
        f1: poly("f1", &p.f1)?,
        f2: poly("f2", &p.f2)?,
        f3: poly("f3", &p.f3)?,
        t: poly("t", &p.t)?,
        point,
    };
    let r = symbol_axioms_check(&inputs, &ctx.schedule)?;
    let mut out = Outcome::new(
        json!({
            "antisymmetry": complex(r.antisymmetry.value),
            "multiplicativity": complex(r.multiplicativity.value),
            "steinberg": complex(r.steinberg.value),
        }),
        json!({
            "antisymmetry": axiom_value(r.antisymmetry),
            "multiplicativity": axiom_value(r.multiplicativity),
            "steinberg": axiom_value(r.steinberg),
            "max_deviation": r.max_deviation(),
            "tolerance": AXIOM_TOL,
        }),
    );
    if r.max_deviation() > AXIOM_TOL {
        out.push(Diagnostic::warning("axiom-deviation", format!("largest deviation {:.3e} exceeds {AXIOM_TOL:e}", r.max_deviation())));
    }
    Ok(out)
}

pub fn verify(suite: Suite, seed: u64) -> Outcome {
    let report = run_suite(suite, seed);
    let failures = report.failures().count();
    let mut out = Outcome::new(
        json!({ "passed": report.passed(), "checks": report.checks.len(), "failures": failures }),
        serde_json::to_value(&report).unwrap_or(Value::Null),
    );
    for c in report.failures() {
        out.push(Diagnostic {
            level: super::envelope::Level::Error,
            code: "property-failed".into(),
            message: format!("{}: {}", c.suite, c.name),
            path: None,
            data: Some(json!({ "deviation": c.deviation, "tolerance": c.tolerance, "detail": c.detail })),
        });
    }
    out.failed = failures > 0;
    out
}
