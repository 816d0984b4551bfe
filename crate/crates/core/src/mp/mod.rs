//! Arbitrary-precision real/complex kernel.
//!
//! Everything downstream builds on four pieces: [`BigReal`]/[`BigComplex`]
//! wrappers over binary floating point with explicit precision, exact
//! rationals for Bernoulli numbers, complex special functions (powers,
//! gamma), and truncated decimal formatting.

mod bernoulli;
mod complex;
mod consts;
mod format;
mod gamma;
mod precision;
mod rational;
mod real;

pub use bernoulli::{bernoulli_even_real, bernoulli_numbers};
pub use complex::{complex_power, BigComplex};
pub use consts::{constant_ln2, constant_pi, with_consts};
pub use format::{format_fixed, format_sci, round_scaled_int};
pub use gamma::{complex_gamma, ln_gamma};
pub use precision::Precision;
pub use rational::ExactRational;
pub use real::BigReal;

/// Rounding used for all internal arithmetic (user-facing digit strings
/// are truncated separately by the formatter).
pub(crate) const RM: astro_float::RoundingMode = astro_float::RoundingMode::ToEven;
