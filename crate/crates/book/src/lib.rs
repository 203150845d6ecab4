//! Runs the snippets of the user guide in `book/` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/credences.md")]
pub mod credences {}
#[doc = include_str!("../../../book/src/overlap_complex.md")]
pub mod overlap_complex {}
#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}
#[doc = include_str!("../../../book/src/deciding.md")]
pub mod deciding {}
#[doc = include_str!("../../../book/src/counterexamples.md")]
pub mod counterexamples {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
