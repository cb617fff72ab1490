//! Fractional order-shifting operators for Bessel functions.
//!
//! The crate evaluates the Bessel family (`J`, `Y`, `H1`, `H2`, `I`, `K`)
//! at complex order and argument, integrates along piecewise contours with
//! explicit branch tracking, and applies fractional Riemann and Weyl
//! operators that move the order of a Bessel function by a complex amount.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod besselcore;
pub mod complexmath;
pub mod contours;
mod dd;
pub mod error;
pub mod fracops;
pub mod groupaction;
pub mod intreps;
mod quad;

pub use complexmath::{ComplexValue, PhaseConvention, C64};
pub use error::{Error, Result};
