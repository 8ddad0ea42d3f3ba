//! Runs every code block in the book as a documentation test, so the
//! prose under `book/` can never drift from the library. mdBook itself
//! does not execute snippets against a local crate; including each chapter
//! as a module doc and letting `cargo test --doc` do the work is the
//! simplest arrangement that keeps both honest. One module per chapter so
//! a failure points at the offending file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/prime-sums.md")]
pub mod prime_sums {}

#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}

#[doc = include_str!("../../../book/src/gamma-kernel.md")]
pub mod gamma_kernel {}

#[doc = include_str!("../../../book/src/lfunctions.md")]
pub mod lfunctions {}

#[doc = include_str!("../../../book/src/zeros.md")]
pub mod zeros {}

#[doc = include_str!("../../../book/src/mean-value.md")]
pub mod mean_value {}

#[doc = include_str!("../../../book/src/circle-method.md")]
pub mod circle_method {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
