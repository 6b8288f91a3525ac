//! Tame symbols on plane curves: the closed form on smooth curves, the
//! perturbation limit at arbitrary points, the disc model with its global
//! product and winding-number index, and the symbol axioms.

mod axioms;
mod disc;
mod local;
mod regular;

pub use axioms::{symbol_axioms_check, AxiomInputs, AxiomReport, AxiomValue};
pub use disc::{
    carey_pincus, disc_root_count, joint_torsion_global_disc, joint_torsion_global_matrix,
    noether_index, noether_index_with, DiscModelProblem, GlobalProduct, LocalFactor, LocalMethod,
    Winding, CIRCLE_TOL, DISC_INDEX, WINDING_NODES,
};
pub use local::{
    admissible_radius, tame_symbol_local, tame_symbol_on_line, LimitSchedule, LocalSymbol,
    SymbolProblem, TracePoint, GOLDEN_ANGLE, MAX_ADMISSIBLE_RADIUS, MAX_ROTATIONS,
};
pub use regular::{local_factorization, tame_symbol_regular, ORDER_TOL};
