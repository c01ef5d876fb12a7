//! Determinant formulae for hyperelliptic sigma functions.
//!
//! Two engines cooperate. The exact engine ([`exact`], [`schur`],
//! [`curve_series`], [`division`]) works over the rationals and over
//! polynomial rings in the curve coefficients. The numeric engine
//! ([`numeric`]) computes periods, Riemann theta values and the normalised
//! sigma function of a curve with real branch points. [`verifier`] runs the
//! identities linking the two and reports residuals.

pub mod constants;
pub mod curve_series;
pub mod division;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod schur;
pub mod verifier;

pub use error::{Error, Result};
