//! Numerics toolkit for the Fourier multiplier symbols of spherical, ball,
//! and Gaussian averaging operators in high dimension.
//!
//! The crate evaluates the three radial symbols and their differences,
//! certifies the pointwise estimates they satisfy over `(r, d)` grids,
//! measures the dimension decay of the difference symbols, verifies the
//! probabilistic identities behind them by Monte Carlo, and evaluates the
//! maximal functions on the classical radial test inputs.
//!
//! Start with the runnable programs in `examples/`; each one exercises one
//! capability end to end. The `dimfree` binary exposes the same sweeps as
//! batch subcommands with CSV output and reproducibility manifests.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod multipliers;
pub mod numerics;
pub mod radial;

pub use error::{Error, Result};
