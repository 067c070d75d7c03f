//! Poisson structures on the loop group from `r`-matrices with a
//! `q`-shift twist, and their reduction to q-Virasoro.

pub mod bilocal;
pub mod derive;
pub mod gradient;
pub mod jacobi;
pub mod kernel;
pub mod point;
pub mod reduction;
pub mod spec;
pub mod w_structure;

pub use bilocal::{leibniz, BracketRule, Factor, LoopMonomial, PointValues, SeriesPoly, TermKey};
pub use derive::{bracket_eval, derive_bracket_rule, hand_table, rll_family_rule, rll_rule};
pub use gradient::{gradient, pairing, symbolic_gradient, GeneratorId, Side, LOOP_ENTRIES};
pub use kernel::{KernelAtom, KernelExpr};
pub use point::LoopPoint;
pub use spec::{constraint_bracket_coefficient, first_class_phi, phi_tilde, solve_first_class_loop, PhiSolution, RMatrixSpec};
pub use reduction::{
    b_zero_cross_section_mismatches, c_wt_t_rule, miura_check_loop, miura_kernel_defect, miura_loop, reduced_virasoro_rule,
    virasoro_modes, virasoro_rule, wt_t, MiuraRecord,
};
pub use jacobi::NestedBrackets;
pub use w_structure::{free_field_diagonal_in_x, free_field_offdiagonal_in_x, virasoro_coefficient_in_x, DeltaTerm, TopConvention, WStructure};
