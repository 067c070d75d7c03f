//! The finite case `G = SL2^N` with `τ` the cyclic site shift.

pub mod bracket;
pub mod checks;
pub mod config;
pub mod cybe;
pub mod phi;
pub mod reduction;

pub use bracket::{
    derive_lattice_table, derive_lattice_table_twisted, discrete_virasoro_table, heisenberg_table, nu_table,
    poisson_bracket, shift_sites, sklyanin_table, BracketTable, LATTICE_TWIST, LatticeBracketTable, PoissonOperand,
};
pub use cybe::{cybe_residual, cybe_residual_bounded, lattice_r_matrix, r_is_shift_invariant, LatticeTensor, SiteBasis, Sl2};
pub use phi::{closed_form_phi, root_unity_deviation, root_unity_phi, solve_first_class_lattice, wrap, LatticePhi};
pub use reduction::{
    canonical_t_matches_wt_t, discrete_miura_check, ftv_chain, nu_from_heisenberg_check, reduce_discrete_virasoro,
    reduce_with_table, wt_t, FtvRecord, IdentityCheck, ReductionRecord,
};
pub use config::{LatticeConfig, SiteMatrix};
pub use checks::{
    jacobi_at_points,
    constraint_invariance_check, jacobi_check, poisson_action_check, poisson_action_check_twisted, random_point, random_sl2,
    twisted_conjugation, ActionRecord, JacobiFailure, JacobiRecord, VarietyPoint,
};
