//! Every example under `examples/`, run through its `run` function.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(koszul_cohomology, "koszul_cohomology.rs");
example!(cone_isomorphism, "cone_isomorphism.rs");
example!(six_term_torsion, "six_term_torsion.rs");
example!(joint_torsion, "joint_torsion.rs");
example!(nonsingular_identity, "nonsingular_identity.rs");
example!(transition_numbers, "transition_numbers.rs");
example!(multiplicity, "multiplicity.rs");
example!(solve_system, "solve_system.rs");
example!(tame_symbol_regular, "tame_symbol_regular.rs");
example!(tame_symbol_limit, "tame_symbol_limit.rs");
example!(carey_pincus, "carey_pincus.rs");
example!(noether_index, "noether_index.rs");
example!(symbol_axioms, "symbol_axioms.rs");
example!(verify_suites, "verify_suites.rs");

use num_complex::Complex64;
use torsion_lab::PolarScalar;

fn near(s: PolarScalar, re: f64, tol: f64) -> bool {
    s.relative_distance(PolarScalar::from_complex(Complex64::new(re, 0.0)).unwrap()) <= tol
}

#[test]
fn koszul_cohomology_has_index_zero_everywhere() {
    let dims = koszul_cohomology::run().unwrap();
    assert_eq!(dims.len(), 2);
    for d in dims {
        assert_eq!(d[0] as i64 - d[1] as i64 + d[2] as i64, 0);
        assert!(d[2] > 0);
    }
}

#[test]
fn cone_isomorphism_is_a_chain_map() {
    assert!(cone_isomorphism::run().unwrap() <= 1e-12);
}

#[test]
fn six_term_torsion_ignores_complements() {
    // The inclusion of H^{-1}(C_f) = ker f contributes |(0, 1)| / |f column| = 1/√5.
    assert!(near(six_term_torsion::run().unwrap(), 1.0 / 5f64.sqrt(), 1e-12));
}

#[test]
fn joint_torsion_of_matrices_is_one() {
    assert!(near(joint_torsion::run().unwrap(), 1.0, 1e-9));
}

#[test]
fn nonsingular_paths_agree() {
    let [jt, lq, ex] = nonsingular_identity::run().unwrap();
    assert!(jt.relative_distance(lq) <= 1e-8 && jt.relative_distance(ex) <= 1e-8);
}

#[test]
fn transition_numbers_form_a_cocycle() {
    let (cocycle, anti) = transition_numbers::run().unwrap();
    assert!(cocycle <= 1e-8 && anti <= 1e-8);
}

#[test]
fn multiplicities() {
    assert_eq!(multiplicity::run().unwrap(), vec![6, 2, 1, 2, 3, 4, 5]);
}

#[test]
fn plane_system_has_four_simple_zeros() {
    assert_eq!(solve_system::run().unwrap(), 4);
}

#[test]
fn regular_golden_symbols() {
    let s = tame_symbol_regular::run().unwrap();
    assert!(near(s[0], -1.0, 1e-12) && near(s[1], 1.0, 1e-12) && near(s[2], 1.0 / 9.0, 1e-12));
}

#[test]
fn cusp_symbol_is_one() {
    let s = tame_symbol_limit::run().unwrap();
    assert!(near(s.value, 1.0, 1e-6));
    assert!(s.trace.len() <= 40);
}

#[test]
fn carey_pincus_matches_global_product() {
    assert!(carey_pincus::run().unwrap() <= 1e-6);
}

#[test]
fn noether_index_counts_roots() {
    assert_eq!(noether_index::run().unwrap(), (-2, 2));
}

#[test]
fn cusp_axioms_hold() {
    assert!(symbol_axioms::run().unwrap() <= 1e-6);
}

#[test]
fn verification_suites_pass() {
    assert_eq!(verify_suites::run(), 0);
}
