//! The guide's chapters, compiled as doctests so the book in `book/`
//! stays in sync with the library. `cargo test --doc` runs every code
//! block below.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/frame-complexes.md")]
pub mod frame_complexes {}

#[doc = include_str!("../../../book/src/pasting.md")]
pub mod pasting {}

#[doc = include_str!("../../../book/src/birkhoff-duality.md")]
pub mod birkhoff_duality {}

#[doc = include_str!("../../../book/src/finite-locales.md")]
pub mod finite_locales {}

#[doc = include_str!("../../../book/src/boolean-colimits.md")]
pub mod boolean_colimits {}

#[doc = include_str!("../../../book/src/obstruction-kernel.md")]
pub mod obstruction_kernel {}

#[doc = include_str!("../../../book/src/spectra-pipeline.md")]
pub mod spectra_pipeline {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
