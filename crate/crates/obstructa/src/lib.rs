//! Finite-scale obstruction workbench.
//!
//! This crate realizes, at desk scale, the machinery by which spectrum
//! functors (Gelfand, Zariski, Stone, Pierce) provably trivialize on
//! matrix-algebra fragments: exact Kochen–Specker colorability search over
//! orthonormal-basis configurations, pasting into finite partial Boolean
//! algebras, Lindenbaum colimits of Boolean-algebra diagrams, limits of
//! finite locales through Birkhoff duality, and a finite-category kernel
//! that checks the obstruction argument itself.
//!
//! The narrative guide lives in `book/`; its code blocks compile and run as
//! doctests of this crate.

pub mod book;
pub mod boolean;
pub mod cli;
pub mod cat;
pub mod complexes;
pub mod exactlin;
pub mod locale;
pub mod oracle;
pub mod order;
pub mod pba;
pub mod pipeline_square;
pub mod selftest;
pub mod spectra;

pub use complexes::{FrameComplex, PastedPBA};
pub use exactlin::{RayVector, Scalar, SubspaceClass};
pub use locale::FinFrame;
pub use order::{FinDistLattice, FinPoset};
pub use pba::PartialBooleanAlgebra;
pub use spectra::{nogo_pipeline, PipelineReport, SpectrumFunctor};

/// CLI entry point used by the `obstructa` binary; returns the exit code.
pub fn run_cli() -> i32 {
    cli::run()
}
