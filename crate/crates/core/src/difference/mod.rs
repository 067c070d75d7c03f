//! Matrix difference operators over a ring with an automorphism, their
//! unipotent gauge normal form, scalar operators and the Miura map.

pub mod json;
pub mod matrix;
pub mod random;
pub mod ring;
pub mod scalar;

pub use json::AnyMatrixOp;
pub use matrix::{canonicalize, determinant, gauge_apply, is_mj_member, CanonicalForm, GaugeElement, Matrix, MatrixOp};
pub use random::{random_mj_member, random_unipotent, RandomElement};
pub use ring::{DifferenceRing, IdentityRing, LatticeRing, QShiftRing, RingVariant, SiteArray};
pub use scalar::{extract_scalar, fundamental_characters, miura_compose, miura_matrix, QDifferenceOperator, ScalarQDO};
