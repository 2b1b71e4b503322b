//! Transient antiplane waves in a 2D square lattice of unit masses joined
//! by Voigt elements (spring and damper in parallel) along the axes and
//! diagonals.
//!
//! The crate provides the explicit finite-difference simulator
//! ([`lattice`]), the special functions behind the quasi-front asymptotics
//! ([`specfun`]), evaluators for each closed-form solution family
//! ([`asymptotics`]) and the peak/width/exponent machinery used to compare
//! the two ([`analysis`]).

pub mod analysis;
pub mod asymptotics;
pub mod error;
pub mod lattice;
pub mod specfun;

pub use asymptotics::{AsymptoticModel, Quantity, LONG_WAVE_SPEED};
pub use error::{Error, Result};
