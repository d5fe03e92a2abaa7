//! The chapters of the book in `book/`, compiled so that `cargo test` runs
//! every code block in them. mdbook cannot link the library into its own
//! test runner, so each chapter is included as the docs of a module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/semigroup.md")]
pub mod semigroup {}
#[doc = include_str!("../../../book/src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("../../../book/src/representations.md")]
pub mod representations {}
#[doc = include_str!("../../../book/src/spectrum.md")]
pub mod spectrum {}
#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}
#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
