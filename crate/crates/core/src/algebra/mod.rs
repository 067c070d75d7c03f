//! Exact arithmetic: `Q(q)`, Laurent polynomials in `s` with the `q`-shift,
//! and multivariate lattice polynomials and their ratios.

pub mod lattice_poly;
pub mod laurent;
pub mod poly;
pub mod rational_expr;
pub mod ratfunc;

pub use lattice_poly::{rat, Gen, GenKind, LatticePolynomial, Monomial};
pub use laurent::{laurent_invert, laurent_shift, LaurentPoly};
pub use poly::IntPoly;
pub use rational_expr::RationalExpr;
pub use ratfunc::{ratq_arith, ArithOp, RationalFunctionQ, POLE_TOLERANCE};

use num_complex::Complex64;

use crate::error::Result;

/// Evaluate a rational function at a complex specialization of `q`.
pub fn eval_complex(x: &RationalFunctionQ, q0: Complex64) -> Result<Complex64> {
    x.eval_complex(q0)
}
