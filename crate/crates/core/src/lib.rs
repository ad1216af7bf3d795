//! Linear quantum input-output networks.
//!
//! Build linear SLH generators, wire them into beam-splitter feedback loops,
//! and evaluate transfer matrices, squeezing spectra, power spectral
//! densities and stability thresholds. The [`dpa`] module carries the
//! closed-form results for the degenerate parametric amplifier, which double
//! as an oracle for the generic pipeline.

pub mod algebra;
pub mod cli;
pub mod dpa;
pub mod error;
pub mod grid;
pub mod netdsl;
pub mod slh;
pub mod spectra;
pub mod transfer;

pub use algebra::{c64, Complex64, ComplexMatrix, DoubledMatrix};
pub use error::{Error, Result};
pub use slh::{BeamSplitter, LinearSLH};
pub use spectra::SpectralSample;
pub use transfer::{FrequencyResponse, StateSpaceRealization};
