//! Translation-invariant frame decompositions of Fourier-diagonal operators.
//!
//! Everything is built on a discrete periodic signal model: real signals
//! sampled on a uniform grid over `[0, 1)` with a power-of-two number of
//! samples. Translation-invariant frames are stored as banks of Fourier
//! multipliers, forward operators are diagonal in frequency, and the
//! frame decomposition of an operator pairs an analysis bank with a
//! vaguelette bank and per-scale quasi-singular values. Regularizing
//! filters and the filtered reconstruction pipeline sit on top.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the
//! experiment harness live in the companion `tidfd-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dfd;
pub mod error;
pub mod fft;
pub mod filter;
pub mod frame;
pub mod operator;
pub mod recon;
pub mod signal;

pub use dfd::{IllPosednessReport, IllPosednessVerdict, TiDfd, TiDfdReport};
pub use error::{Error, Result};
pub use filter::{FilterSpec, FilterValidationReport, QualificationResult};
pub use frame::{CoefficientFamily, DecimatedCoefficients, FrameBounds, MultiplierBank};
pub use operator::DiagonalOperator;
pub use recon::{DecimatedMode, NormBoundProbe, ReconstructionReport, WorstCaseProbe};
pub use signal::{Signal, Spectrum};
