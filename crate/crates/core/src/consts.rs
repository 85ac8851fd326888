//! Reference constants, entered as 30-digit literals.

#![allow(clippy::excessive_precision, clippy::approx_constant)]

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// Natural logarithm of 2.
pub const LN_2: f64 = 0.693147180559945309417232121458;
