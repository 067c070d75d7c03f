//! mdbook cannot run snippets that need workspace crates, so every chapter
//! is included here as module docs and `cargo test` runs its code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/difference-operators.md")]
pub mod difference_operators {}
#[doc = include_str!("../../../book/src/loop-brackets.md")]
pub mod loop_brackets {}
#[doc = include_str!("../../../book/src/lattice.md")]
pub mod lattice {}
#[doc = include_str!("../../../book/src/running-checks.md")]
pub mod running_checks {}
#[doc = include_str!("../../../book/src/anchors.md")]
pub mod anchors {}
