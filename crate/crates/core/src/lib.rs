//! Exact computer algebra for the q-difference Drinfeld-Sokolov reduction of
//! `SL2`: gauge normal forms of difference operators, r-matrix Poisson
//! brackets on the loop group and on `SL2^N`, the q-deformed and discrete
//! Virasoro algebras, and their Miura realizations.

pub mod algebra;
pub mod difference;
pub mod error;
pub mod lattice;
pub mod loop_poisson;
pub mod report;

pub use error::{Error, Result};
